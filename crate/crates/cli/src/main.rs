use clap::Parser;

fn main() {
    let cli = higgsnef_cli::Cli::parse();
    match higgsnef_cli::run(&cli) {
        Ok(report) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("serializable report")
                );
            } else {
                print!("{}", report.human);
            }
            std::process::exit(report.exit_code);
        }
        Err(error) => {
            eprintln!("error: {error}");
            std::process::exit(error.exit_code());
        }
    }
}
