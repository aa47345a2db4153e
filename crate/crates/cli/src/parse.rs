//! Command-line value syntax: elements are integers (prime fields) or
//! bracketed ascending coefficient lists (extensions); lists are
//! comma-separated; polynomials are ascending coefficient lists; several
//! polynomials are separated by `;`.

use heisenberg_core::{Field, FieldElem, Poly};

/// Splits on commas that are not inside brackets.
pub fn split_top_level(s: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(format!("unbalanced brackets in {s:?}"));
        }
        if ch == ',' && depth == 0 {
            out.push(cur.trim().to_string());
            cur.clear();
        } else {
            cur.push(ch);
        }
    }
    if depth != 0 {
        return Err(format!("unbalanced brackets in {s:?}"));
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur.trim().to_string());
    }
    Ok(out)
}

pub fn parse_int_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| format!("invalid integer {t:?}")))
        .collect()
}

pub fn parse_elem(field: &Field, s: &str) -> Result<FieldElem, String> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
        let coeffs: Vec<i64> = parse_int_list(inner)?;
        if coeffs.len() > field.degree() {
            return Err(format!("{s} has more than {} coefficients", field.degree()));
        }
        let reduced: Vec<u64> = coeffs
            .iter()
            .map(|&c| field.prime_subfield().from_int(c).value())
            .collect();
        return field.from_coeffs(&reduced).map_err(|e| e.to_string());
    }
    let n: i64 = s.parse().map_err(|_| format!("invalid field element {s:?}"))?;
    Ok(field.from_int(n))
}

pub fn parse_elem_list(field: &Field, s: &str) -> Result<Vec<FieldElem>, String> {
    split_top_level(s)?.iter().map(|t| parse_elem(field, t)).collect()
}

pub fn parse_poly(field: &Field, s: &str) -> Result<Poly, String> {
    let coeffs = parse_elem_list(field, s)?;
    Poly::from_elems(field, &coeffs).map_err(|e| e.to_string())
}

pub fn parse_poly_list(field: &Field, s: &str) -> Result<Vec<Poly>, String> {
    s.split(';').map(|t| parse_poly(field, t)).collect()
}
