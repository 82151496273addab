//! Plaintext triangle meshes: `v x y z` records followed by 1-based
//! `f a b c` records over a row-major parameter grid.

use std::io::{self, Write};

use crate::grid::Grid;
use crate::surface::immersion::Immersion;

pub fn write_mesh<I: Immersion + ?Sized, W: Write>(
    mut out: W,
    imm: &I,
    grid: &Grid,
    comment: Option<&str>,
) -> io::Result<()> {
    if let Some(c) = comment {
        for line in c.lines() {
            writeln!(out, "# {line}")?;
        }
    }
    for (s, t) in grid.points() {
        let p = imm.point(s, t);
        writeln!(out, "v {:.8e} {:.8e} {:.8e}", p.x, p.y, p.z)?;
    }
    let n = grid.n;
    for row in 0..n - 1 {
        for col in 0..n - 1 {
            let a = row * n + col + 1;
            let (b, c, d) = (a + 1, a + n, a + n + 1);
            writeln!(out, "f {a} {b} {d}")?;
            writeln!(out, "f {a} {d} {c}")?;
        }
    }
    Ok(())
}
