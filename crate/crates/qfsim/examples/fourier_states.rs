//! The four families of two-qubit Fourier states, the γ states, and the
//! density-matrix tile layouts that tell maximal, non-maximal, and rough
//! entanglement apart.
//!
//! Run with: `cargo run --example fourier_states`

use qfsim::output::{format_matrix, format_state, BitOrder};
use qfsim::states::{
    bell, classify, density, fourier_state_2q, gamma, ghz, tile_pattern, StateLabel, TILE_TOLERANCE,
};

fn show_tiles(mask: [[bool; 4]; 4]) {
    for row in mask {
        let line: String = row.iter().map(|&b| if b { 'x' } else { '.' }).collect();
        println!("    {line}");
    }
}

fn main() -> qfsim::Result<()> {
    let order = BitOrder::Natural;

    for degree in 0..=3u32 {
        println!("== degree {degree} ==");
        for label in StateLabel::all() {
            let state = fourier_state_2q(degree, label)?;
            println!("label {label}:");
            print!("{}", format_state(&state, order));
        }
    }

    println!("The degree-2 states are the Bell states:");
    for label in StateLabel::all() {
        let dev = fourier_state_2q(2, label)?.max_diff(&bell(label))?;
        println!("  label {label}: max difference {dev:.3e}");
    }

    println!("\nγ states replace H with the fourth root of X:");
    for label in StateLabel::all() {
        println!("label {label}:");
        print!("{}", format_state(&gamma(label), order));
    }

    println!("Density matrix of the 00 Bell state (four corners):");
    print!(
        "{}",
        format_matrix(density(&bell(StateLabel::new(false, false)))?.matrix())
    );

    println!("Density matrix of the degree-1 state with label 00 (rough layout):");
    let rough = density(&fourier_state_2q(1, StateLabel::new(false, false))?)?;
    print!("{}", format_matrix(rough.matrix()));

    println!("Tile layouts and classification for every family member:");
    for label in StateLabel::all() {
        let states = [
            ("bell", density(&bell(label))?),
            ("gamma", density(&gamma(label))?),
            ("rough-1", density(&fourier_state_2q(1, label)?)?),
            ("rough-3", density(&fourier_state_2q(3, label)?)?),
        ];
        for (name, rho) in states {
            let tiles = tile_pattern(&rho, TILE_TOLERANCE)?;
            println!("  {name} {label} -> {}", classify(&rho)?);
            show_tiles(tiles.mask);
        }
    }

    println!("\nGHZ states are the degree-2 family at higher widths:");
    for n in 2..=4 {
        print!("GHZ{n}:\n{}", format_state(&ghz(n)?, order));
    }

    Ok(())
}
