use std::io::IsTerminal;

fn main() {
    let color = std::io::stdout().is_terminal() && std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty());
    let code = sullivan_cli::run(std::env::args_os(), color, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
