fn main() {
    std::process::exit(riesz_sharp::cli::run(std::env::args_os()));
}
