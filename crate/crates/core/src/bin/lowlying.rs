fn main() {
    let code = lowlying::cli::main_with_args(std::env::args_os());
    std::process::exit(code as i32);
}
