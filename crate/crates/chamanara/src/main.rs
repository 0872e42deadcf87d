use clap::Parser;

fn main() {
    let cli = chamanara::cli::Cli::parse();
    std::process::exit(chamanara::cli::run(cli));
}
