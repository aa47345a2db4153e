use clap::Parser;

fn main() {
    let cli = heisenberg_cli::app::Cli::parse();
    std::process::exit(heisenberg_cli::app::run(cli));
}
