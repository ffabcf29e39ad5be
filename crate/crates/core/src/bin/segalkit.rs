use std::io::Write;

fn main() {
    let mut args: Vec<String> = std::env::args().collect();
    if let Some(a) = args.first_mut() {
        *a = "segalkit".into();
    }
    let (code, report, text) = segalkit::cli::run(args);
    match report {
        Some(r) if code == 2 && r.error.is_some() => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            if let Some(e) = &r.error {
                eprintln!("error: {e}");
            }
        }
        Some(_) => {
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
        None if code == 0 => print!("{text}"),
        None => eprint!("{text}"),
    }
    std::process::exit(code);
}
