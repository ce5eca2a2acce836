fn main() {
    std::process::exit(expander_rewire::commands::main_with_args(
        std::env::args_os(),
    ));
}
