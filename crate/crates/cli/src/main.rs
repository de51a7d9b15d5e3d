use clap::Parser;

fn main() {
    let cli = hamadv::Cli::parse();
    std::process::exit(hamadv::run(&cli));
}
