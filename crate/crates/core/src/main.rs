fn main() {
    let out = hopf_partial::cli::run_command(std::env::args_os());
    if out.code == 2 {
        eprint!("{}", out.output);
    } else {
        print!("{}", out.output);
    }
    std::process::exit(out.code);
}
