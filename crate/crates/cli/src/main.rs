fn main() {
    // placeholder while the library crates are built
}
