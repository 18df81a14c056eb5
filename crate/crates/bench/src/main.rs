use aro_bench::commands::Style;

fn main() {
    let code = aro_bench::cli::run(
        std::env::args_os(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
        Style::detect(),
    );
    std::process::exit(code);
}
