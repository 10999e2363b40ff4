//! Teleportation over the three pair sources: maximal (Bell), non-maximal
//! (γ), and rough (degree-1 Fourier). Prints the analytic branch tables, the
//! receiver marginals with post-processing, a seeded histogram, and the
//! side-by-side comparison against the embedded reference rows.
//!
//! Run with: `cargo run --example teleportation`

use qfsim::output::{format_complex, format_distribution, BitOrder};
use qfsim::teleport::{
    post_process, table10_report, teleport_analytic, teleport_sampled, PairSource, PsiInput,
    RoughDegree,
};

fn main() -> qfsim::Result<()> {
    let sources = [
        PairSource::maximal(),
        PairSource::non_maximal(),
        PairSource::rough(RoughDegree::One),
    ];

    for source in &sources {
        for psi in [PsiInput::Zero, PsiInput::One] {
            let state = psi.state()?;
            let report = teleport_analytic(&state, source)?;
            println!("== {} teleporting {:?} ==", source.name(), psi);
            for branch in &report.branch_table {
                println!(
                    "  bsm {}  p = {:.4}  receiver = [{}, {}]",
                    branch.bsm,
                    branch.probability,
                    format_complex(branch.bob.amp(0)),
                    format_complex(branch.bob.amp(1)),
                );
            }
            print!(
                "receiver marginal:\n{}",
                format_distribution(&report.bob_marginal, BitOrder::Natural)
            );
            match post_process(&report.bob_marginal) {
                Ok(bit) => println!("post-processed outcome: {bit}"),
                Err(e) => println!("post-processing: {e}"),
            }
            println!();
        }
    }

    println!("Sampled run: rough source, 10000 shots, seed 7 (outcomes are q0 q1 q2):");
    let hist = teleport_sampled(
        &PsiInput::Zero.state()?,
        &PairSource::rough(RoughDegree::One),
        10_000,
        7,
        false,
    )?;
    print!("{}", format_distribution(&hist, BitOrder::Natural));
    let marginal = hist.marginal(|k| k[2..3].to_string());
    print!(
        "receiver marginal:\n{}",
        format_distribution(&marginal, BitOrder::Natural)
    );

    println!("\nComparison table (theory, our sampling, external simulator, device):");
    for row in table10_report(8192, 7)? {
        println!(
            "  {:<12} |{}>  theory {:.4}/{:.4}  sampled {:.4}/{:.4}  sim {:.4}/{:.4}  device {:.4}/{:.4}  |Δ device| {:.4}",
            row.source,
            row.psi,
            row.theoretical.p_zero,
            row.theoretical.p_one,
            row.sampled.p_zero,
            row.sampled.p_one,
            row.simulator_reference.p_zero,
            row.simulator_reference.p_one,
            row.lima_reference.p_zero,
            row.lima_reference.p_one,
            row.delta_lima[0],
        );
    }

    Ok(())
}
