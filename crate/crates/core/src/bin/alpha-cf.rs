fn main() {
    let out = alpha_cf::cli::parse_and_dispatch(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.status);
}
