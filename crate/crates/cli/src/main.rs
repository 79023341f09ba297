fn main() {
    std::process::exit(au_workbench::run(std::env::args_os()));
}
