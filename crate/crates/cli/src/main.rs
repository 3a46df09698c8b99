use std::process::ExitCode;

fn main() -> ExitCode {
    let result = quandlekit_cli::run(std::env::args_os());
    let text = result.stdout();
    if result.exit_code == 0 {
        print!("{text}");
        if !text.ends_with('\n') {
            println!();
        }
    } else {
        if result.json_requested {
            println!("{text}");
        }
        if let Some(t) = &result.table {
            eprintln!("{}", t.trim_end());
        }
    }
    ExitCode::from(result.exit_code as u8)
}
