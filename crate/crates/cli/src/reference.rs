//! Published values the harness compares against.

use octof4_core::scalar::{int, rat, Rational};
use octof4_core::susy::Branch;

/// `(label, block-diagonal, symmetric, count)` for the 7+1+1 split of the 256 products.
pub const CLASS_TABLE: [(&str, bool, bool, usize); 16] = [
    ("I", true, true, 1),
    ("Gamma^(1)", false, true, 7),
    ("Gamma_8", false, true, 1),
    ("Gamma_9", true, true, 1),
    ("Gamma^(2)", true, false, 21),
    ("Gamma^(1)Gamma_8", true, false, 7),
    ("Gamma^(1)Gamma_9", false, false, 7),
    ("Gamma_8Gamma_9", false, false, 1),
    ("Gamma^(3)", false, false, 35),
    ("Gamma^(2)Gamma_8", false, false, 21),
    ("Gamma^(2)Gamma_9", true, false, 21),
    ("Gamma^(1)Gamma_8Gamma_9", true, false, 7),
    ("Gamma^(4)", true, true, 35),
    ("Gamma^(3)Gamma_8", true, true, 35),
    ("Gamma^(3)Gamma_9", false, true, 35),
    ("Gamma^(2)Gamma_8Gamma_9", false, true, 21),
];

pub fn critical_c(br: Branch) -> Rational {
    match br {
        Branch::First => rat(1, 12),
        Branch::Second => rat(-1, 12),
    }
}

/// `(a, b, c, d, e)` at the critical coupling.
pub fn critical_params(br: Branch) -> [Rational; 5] {
    match br {
        Branch::First => [rat(-1, 36), int(0), rat(1, 12), rat(1, 36), int(0)],
        Branch::Second => [rat(1, 36), int(0), rat(-1, 12), rat(1, 36), int(0)],
    }
}

/// Diagonal of the critical potential, bosons first.
pub fn critical_potential(br: Branch) -> Vec<Rational> {
    let mut v = Vec::with_capacity(16);
    match br {
        Branch::First => {
            v.extend(std::iter::repeat_n(rat(7, 72), 8));
            v.push(rat(91, 72));
            v.extend(std::iter::repeat_n(rat(-5, 72), 7));
        }
        Branch::Second => {
            v.push(rat(91, 72));
            v.extend(std::iter::repeat_n(rat(-5, 72), 7));
            v.extend(std::iter::repeat_n(rat(7, 72), 8));
        }
    }
    v
}

/// Row `Ibar` of the lowest-weight exponent table.
pub fn lowest_weight_exponents(ibar: usize) -> Vec<Rational> {
    let mut v = vec![rat(-7, 6)];
    v.extend(std::iter::repeat_n(rat(1, 6), 7));
    for j in 0..8 {
        v.push(if j == ibar { rat(7, 6) } else { rat(-1, 6) });
    }
    v
}

/// Row `Ibar` of the lowest-weight energy table.
pub fn lowest_weight_energies(ibar: usize) -> Vec<Rational> {
    let mut v = vec![rat(-2, 3)];
    v.extend(std::iter::repeat_n(rat(2, 3), 7));
    for j in 0..8 {
        v.push(if j == ibar { rat(5, 3) } else { rat(1, 3) });
    }
    v
}

pub const DISTINCT_LOWEST_WEIGHTS: usize = 24;

pub fn ground_energy() -> Rational {
    rat(2, 3)
}

/// Degeneracies of the first `depth + 1` levels.
pub fn degeneracies(depth: usize) -> Vec<usize> {
    std::iter::once(7).chain(std::iter::repeat_n(8, depth)).collect()
}

/// The seven-constraint rank of `span{R_IJ}` at criticality.
pub const R_RANK: usize = 21;
