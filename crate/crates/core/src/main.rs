use clap::Parser;

fn main() {
    let cli = detpow::cli::Cli::parse();
    std::process::exit(detpow::cli::run(cli));
}
