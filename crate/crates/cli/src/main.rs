use clap::Parser;
use qinv_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let r = run(&cli);
    print!("{}", r.render());
    eprintln!("# {} finished in {:.3} s", r.command, r.wall.as_secs_f64());
    std::process::exit(r.status.exit_code());
}
