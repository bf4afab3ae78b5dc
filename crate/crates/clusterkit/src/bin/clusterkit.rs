fn main() { std::process::exit(clusterkit::cli::run()); }
