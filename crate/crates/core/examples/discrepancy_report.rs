//! Every place where a derived formula and its published form disagree,
//! each with its nonzero certificate.
//!
//! ```bash
//! cargo run --release --example discrepancy_report
//! ```

use revsym::discrepancies::{collect, Topic};
use revsym::expr::ZeroTester;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let report = collect(&ZeroTester::default())?;
    for topic in [Topic::Curvature, Topic::Invariance, Topic::DeterminingEquations, Topic::Reduction] {
        let entries: Vec<_> = report.by_topic(topic).collect();
        println!("{topic:?}: {}", entries.len());
        for d in entries {
            println!("  {}  [{:?}]  {}", d.subject, d.certificate.verdict, d.note);
        }
    }
    Ok(())
}
