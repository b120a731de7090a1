fn main() {
    std::process::exit(bandctl::run());
}
