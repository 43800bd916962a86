fn main() { kahler_verify::cli::main() }
