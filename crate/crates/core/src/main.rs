use clap::Parser;

fn main() {
    let cli = transprose::cli::Cli::parse();
    std::process::exit(transprose::cli::run(cli));
}
