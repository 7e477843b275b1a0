fn main() {
    std::process::exit(nilsupport::main_with(std::env::args_os()));
}
