use clap::Parser;

fn main() {
    let cli = padic_wf_cli::Cli::parse();
    std::process::exit(padic_wf_cli::run(cli));
}
