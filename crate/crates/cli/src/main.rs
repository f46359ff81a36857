use clap::Parser;

fn main() {
    let cli = sepwsts_cli::Cli::parse();
    std::process::exit(sepwsts_cli::run(cli));
}
