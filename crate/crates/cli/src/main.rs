fn main() {
    std::process::exit(qdisc_cli::main_with_args(std::env::args_os()));
}
