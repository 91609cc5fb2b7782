fn main() {
    std::process::exit(ringcasimir_workbench::cli::main_with_args(std::env::args_os()));
}
