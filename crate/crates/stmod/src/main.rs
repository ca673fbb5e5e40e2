fn main() {
    std::process::exit(stmod::cli::main_from(std::env::args_os()));
}
