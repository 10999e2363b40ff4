//! Entanglement parallelization: one degree-1 gate fans out into several
//! fully independent Bell pairs (or GHZ branches), verified through reduced
//! density matrices, then used for simultaneous multi-channel teleportation.
//!
//! Run with: `cargo run --example parallel_entanglement`

use qfsim::applications::{hyper_teleport, parallel_ghz, parallel_pairs};
use qfsim::numerics::{outer, partial_trace, ComplexMatrix};
use qfsim::output::{format_distribution, format_matrix, BitOrder};
use qfsim::teleport::PsiInput;
use qfsim::Complex64;

fn main() -> qfsim::Result<()> {
    let n = 4;
    let (_, state) = parallel_pairs(n)?;
    println!(
        "Fabric of {n} pairs on {} qubits; norm^2 = {:.12}",
        2 * n,
        state.norm_sq()
    );

    let rho = outer(&state)?;
    println!("\nReduced matrix of pair (c0, t0), the Bell projector:");
    print!("{}", format_matrix(partial_trace(&rho, &[0, n])?.matrix()));

    println!("Reduced matrix of the cross pair (c0, c1), maximally mixed:");
    print!("{}", format_matrix(partial_trace(&rho, &[0, 1])?.matrix()));

    let quarter = ComplexMatrix::identity(4).scale(Complex64::new(0.25, 0.0));
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                for pair in [[i, j], [n + i, n + j], [i, n + j]] {
                    worst = worst.max(partial_trace(&rho, &pair)?.max_diff(&quarter)?);
                }
            }
        }
    }
    println!("largest cross-pair deviation from I/4 over all combinations: {worst:.3e}");

    println!("\nTwo GHZ branches out of one two-qubit gate:");
    let fabric = parallel_ghz(3)?;
    println!(
        "upper branch qubits {:?}, lower branch qubits {:?}",
        fabric.upper, fabric.lower
    );
    let rho = outer(&fabric.state)?;
    let central = partial_trace(&rho, &[0, 1])?;
    println!(
        "central pair deviation from I/4: {:.3e}",
        central.max_diff(&quarter)?
    );
    let upper = partial_trace(&rho, &fabric.upper)?;
    println!("upper-branch reduced matrix (corners only):");
    print!("{}", format_matrix(upper.matrix()));

    println!("Hyper-teleportation: four channels at once, no cross-talk.");
    let psis = vec![
        PsiInput::Zero.state()?,
        PsiInput::One.state()?,
        PsiInput::Plus.state()?,
        PsiInput::Right.state()?,
    ];
    let report = hyper_teleport(&psis, 4096, 11)?;
    for (i, dist) in report.analytic.iter().enumerate() {
        println!("channel {i} analytic receiver marginal:");
        print!("{}", format_distribution(dist, BitOrder::Natural));
    }
    for (i, dist) in report.sampled.iter().enumerate() {
        println!("channel {i} sampled receiver marginal (4096 shots):");
        print!("{}", format_distribution(dist, BitOrder::Natural));
    }

    Ok(())
}
