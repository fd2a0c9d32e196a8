use clap::Parser;

use euclid_belyi_cli::{run, JobConfig};

fn main() {
    let cfg = JobConfig::parse();
    std::process::exit(run(&cfg));
}
