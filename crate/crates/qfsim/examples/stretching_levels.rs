//! Quantum stretching and entanglement levels: growing a GHZ family by
//! raising the width of the degree-2 gate, or by sliding the seed gate along
//! the inputs of a fixed-width gate.
//!
//! Run with: `cargo run --example stretching_levels`

use qfsim::applications::{level, stretch, LevelSpec, StretchSpec};
use qfsim::gates;
use qfsim::output::{format_state, BitOrder};

fn main() -> qfsim::Result<()> {
    let order = BitOrder::Natural;

    println!("Stretching an H seed: the two amplitudes migrate to the ends.");
    for k in 1..=4 {
        let state = stretch(&StretchSpec::new(k, gates::hadamard())?)?;
        println!("k = {k}:");
        print!("{}", format_state(&state, order));
    }

    println!("The same walk with the fourth root of X keeps its u, v weights:");
    for k in 1..=4 {
        let state = stretch(&StretchSpec::new(k, gates::fourth_root_x())?)?;
        let dim = state.dim();
        println!(
            "k = {k}: amp[0] = {:.4}{:+.4}i, amp[{}] = {:.4}{:+.4}i",
            state.amp(0).re,
            state.amp(0).im,
            dim - 1,
            state.amp(dim - 1).re,
            state.amp(dim - 1).im,
        );
    }

    println!("\nLevels: a fixed four-qubit gate, the seed slides across its inputs.");
    for position in (0..4).rev() {
        let state = level(&LevelSpec::new(4, position, gates::hadamard())?)?;
        println!("seed at input {position}:");
        print!("{}", format_state(&state, order));
    }

    println!("Each level equals zeros in front of the matching stretch:");
    for position in 0..4 {
        let lvl = level(&LevelSpec::new(4, position, gates::hadamard())?)?;
        let tail = stretch(&StretchSpec::new(4 - position, gates::hadamard())?)?;
        let expected = if position == 0 {
            tail
        } else {
            qfsim::StateVector::zero(position)?.tensor(&tail)?
        };
        println!(
            "  position {position}: max difference {:.3e}",
            lvl.max_diff(&expected)?
        );
    }

    Ok(())
}
