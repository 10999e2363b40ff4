//! Quantum repeaters both ways: entanglement swapping (transitivity) and
//! cascaded teleportation (forwarding), including what happens to the rough
//! channel's 75/25 split after two hops.
//!
//! Run with: `cargo run --example repeaters`

use qfsim::applications::{entanglement_swap, repeater_chain, SwapVariant};
use qfsim::output::{format_distribution, BitOrder};
use qfsim::teleport::{PairSource, PsiInput, RoughDegree};

fn main() -> qfsim::Result<()> {
    println!("Entanglement swapping with maximal links:");
    for variant in [SwapVariant::IndependentSources, SwapVariant::ParallelFabric] {
        let report = entanglement_swap(&PairSource::maximal(), variant)?;
        println!("variant {variant:?}:");
        for branch in &report.branches {
            println!(
                "  bsm {}  p = {:.4}  corrected (A,C) fidelity to bell(00) = {:.9}",
                branch.bsm, branch.probability, branch.bell_fidelity
            );
        }
    }

    println!("\nSwapping over rough links (no certainty left, reported as-is):");
    let report = entanglement_swap(
        &PairSource::rough(RoughDegree::One),
        SwapVariant::IndependentSources,
    )?;
    for branch in &report.branches {
        println!(
            "  bsm {}  p = {:.4}  fidelity to bell(00) = {:.4}",
            branch.bsm, branch.probability, branch.bell_fidelity
        );
    }

    println!("\nCascaded teleportation, maximal source: basis states survive any depth.");
    for hops in 1..=3 {
        let report = repeater_chain(
            &PsiInput::One.state()?,
            hops,
            &PairSource::maximal(),
            2048,
            3,
        )?;
        println!("hops = {hops}: analytic final marginal:");
        print!(
            "{}",
            format_distribution(&report.analytic_marginal, BitOrder::Natural)
        );
    }

    println!("Cascaded teleportation, rough source: the split compounds per hop.");
    println!("(one hop keeps 3/4; two independent hops keep 3/4 * 3/4 + 1/4 * 1/4 = 5/8)");
    for hops in 1..=3 {
        let report = repeater_chain(
            &PsiInput::Zero.state()?,
            hops,
            &PairSource::rough(RoughDegree::One),
            4096,
            3,
        )?;
        println!("hops = {hops}:");
        print!(
            "analytic:\n{}",
            format_distribution(&report.analytic_marginal, BitOrder::Natural)
        );
        print!(
            "sampled:\n{}",
            format_distribution(&report.sampled_marginal, BitOrder::Natural)
        );
    }

    Ok(())
}
