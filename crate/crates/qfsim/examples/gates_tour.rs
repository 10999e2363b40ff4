//! Tour of the Fourier gate family `F_p^d = SBEQ · QFT^d · SBEQ`: how the
//! familiar gates fall out of it, why degrees wrap around modulo four, and
//! what the quadrant rotation gates decompose into.
//!
//! Run with: `cargo run --example gates_tour`

use qfsim::gates;
use qfsim::numerics::ComplexMatrix;
use qfsim::output::format_matrix;

fn main() -> qfsim::Result<()> {
    println!("The two-qubit Fourier transform:");
    print!("{}", format_matrix(&gates::qft(2)?));

    println!("\nSquaring it gives the reversed CNOT; conjugating by SWAP the plain one:");
    print!("{}", format_matrix(&gates::qft(2)?.pow(2)?));

    println!("\nF(2,2) = SBEQ · QFT^2 · SBEQ is exactly CNOT:");
    let f22 = gates::qfg(2, 2)?;
    print!("{}", format_matrix(&f22));
    println!(
        "max |F(2,2) - CNOT| = {:.3e}",
        f22.max_diff(&gates::cnot())?
    );

    println!("\nOne qubit: F(1,1) = H, and four Fourier blocks cancel out:");
    println!(
        "max |F(1,1) - H| = {:.3e}",
        gates::qfg(1, 1)?.max_diff(&gates::hadamard())?
    );
    for p in 1..=5 {
        let dev = gates::qft(p)?
            .pow(4)?
            .max_diff(&ComplexMatrix::identity(1 << p))?;
        println!("max |QFT({p})^4 - I| = {dev:.3e}");
    }

    println!("\nDegrees wrap modulo four, so F(3,6) is F(3,2):");
    println!(
        "max |F(3,6) - F(3,2)| = {:.3e}",
        gates::qfg(3, 6)?.max_diff(&gates::qfg(3, 2)?)?
    );

    println!("\nDegrees 1 and 3 are complex conjugates of each other:");
    for p in 1..=4 {
        let dev = gates::qfg(p, 1)?.conjugate().max_diff(&gates::qfg(p, 3)?)?;
        println!("max |conj F({p},1) - F({p},3)| = {dev:.3e}");
    }

    println!("\nThe fourth root of X, built exactly as H T H:");
    print!("{}", format_matrix(&gates::fourth_root_x()));
    println!(
        "max |(fourth root)^4 - X| = {:.3e}",
        gates::fourth_root_x().pow(4)?.max_diff(&gates::pauli_x())?
    );

    println!("\nPauli gates as products of the quadrant rotation gates:");
    let h = |q| gates::hadamard_rotation(q);
    println!(
        "max |H_II H_I - X| = {:.3e}",
        h(2)?.matmul(&h(1)?)?.max_diff(&gates::pauli_x())?
    );
    println!(
        "max |H_IV H_I - Z| = {:.3e}",
        h(4)?.matmul(&h(1)?)?.max_diff(&gates::pauli_z())?
    );
    println!(
        "max |i H_III H_I - Y| = {:.3e}",
        h(3)?
            .matmul(&h(1)?)?
            .scale(qfsim::Complex64::new(0.0, 1.0))
            .max_diff(&gates::pauli_y())?
    );

    Ok(())
}
