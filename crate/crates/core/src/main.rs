fn main() {
    let (code, out) = spherical::cli::run_command(std::env::args_os());
    print!("{out}");
    std::process::exit(code);
}
