fn main() {
    let mut out = String::new();
    let mut err = String::new();
    let code = fermat_core::cli::run(std::env::args_os(), &mut out, &mut err);
    print!("{out}");
    eprint!("{err}");
    std::process::exit(code);
}
