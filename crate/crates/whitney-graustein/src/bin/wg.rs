use clap::Parser;
use whitney_graustein::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
