fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let mut out = String::new();
    let code = seqcm::cli::run_from(std::env::args_os(), &mut out);
    if code == seqcm::cli::EXIT_OK || code == seqcm::cli::EXIT_FAIL {
        print!("{out}");
    } else {
        eprint!("{out}");
    }
    std::process::exit(code);
}
