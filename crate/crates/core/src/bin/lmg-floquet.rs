fn main() {
    std::process::exit(lmg_floquet::cli::parse_and_dispatch(std::env::args_os()));
}
