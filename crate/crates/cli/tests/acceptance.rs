//! The acceptance gate: runs the whole verification checklist, printing one
//! PASS/FAIL line per criterion plus the negative control, then a summary.
//! Exits nonzero if any line fails. (Built without the test harness so the
//! lines always reach the terminal.)

fn main() {
    let report = sextic_lab::checks::run(None).expect("an unfiltered run takes no arguments");
    for outcome in &report.outcomes {
        println!("{}", outcome.line);
    }
    println!("{}", report.summary());
    if report.failed() > 0 {
        std::process::exit(1);
    }
}
