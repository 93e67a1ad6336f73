use clap::Parser;

fn main() {
    let cli = gridfill::cli::Cli::parse();
    std::process::exit(gridfill::cli::run(cli));
}
