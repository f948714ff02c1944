fn main() {
    // Die quietly on a closed pipe (`arith ... | head`) like other Unix
    // tools instead of panicking in println.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(arith_cli::dispatch(std::env::args_os()));
}
