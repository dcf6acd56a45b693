fn main() {
    std::process::exit(qdel::cli::run(std::env::args_os()));
}
