use std::io;
use std::panic;

use cckit::algebra::TermLimitExceeded;

fn main() {
    let default_hook = panic::take_hook();
    panic::set_hook(Box::new(move |info| {
        if info.payload().downcast_ref::<TermLimitExceeded>().is_none() {
            default_hook(info);
        }
    }));
    let code = cckit::cli::run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    std::process::exit(code);
}
