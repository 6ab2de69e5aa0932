//! Counting minimal giant-step constructions.
//!
//! Between consecutive ∇-edges the corridor has one of four shapes, named by
//! the letter of the corresponding run of the step sequence and by whether the
//! run has one letter or more. Each shape transfers the pair `(λ, ρ)` of
//! geodesic counts to the left and right endpoints of one ∇-edge onto the
//! next through a fixed 2×2 matrix. Starting from `(1, 1)` at `∇(1)`, the
//! count at `τ` is `λ_k`, `ρ_k` or `λ_k + ρ_k` depending on where `τ` sits.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::corridor::Disposition;
use crate::invariants::{run_decomposition, steps_to_binary, BinaryInvariants, Step, StepSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Config {
    L1,
    R1,
    L2,
    R2,
}

impl Config {
    pub fn as_str(self) -> &'static str {
        match self {
            Config::L1 => "L1",
            Config::R1 => "R1",
            Config::L2 => "L2",
            Config::R2 => "R2",
        }
    }

    fn from_run(letter: Step, len: usize) -> Config {
        match (letter, len) {
            (Step::Left, 1) => Config::L1,
            (Step::Right, 1) => Config::R1,
            (Step::Left, _) => Config::L2,
            (Step::Right, _) => Config::R2,
            (Step::Down, _) => unreachable!("runs consist of L or R"),
        }
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `[[a, b], [c, d]]` over the naturals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix2 {
    pub a: BigUint,
    pub b: BigUint,
    pub c: BigUint,
    pub d: BigUint,
}

impl Matrix2 {
    pub fn new(
        a: impl Into<BigUint>,
        b: impl Into<BigUint>,
        c: impl Into<BigUint>,
        d: impl Into<BigUint>,
    ) -> Self {
        Matrix2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Self {
        Matrix2::new(1u32, 0u32, 0u32, 1u32)
    }

    pub fn rows(&self) -> [[&BigUint; 2]; 2] {
        [[&self.a, &self.b], [&self.c, &self.d]]
    }

    /// `self · (x, y)ᵀ`.
    pub fn apply(&self, x: &BigUint, y: &BigUint) -> (BigUint, BigUint) {
        (&self.a * x + &self.b * y, &self.c * x + &self.d * y)
    }

    pub fn entries(&self) -> [&BigUint; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

impl Mul for &Matrix2 {
    type Output = Matrix2;

    fn mul(self, rhs: &Matrix2) -> Matrix2 {
        Matrix2 {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[ [ {}, {} ], [ {}, {} ] ]",
            self.a, self.b, self.c, self.d
        )
    }
}

pub fn config_matrix(c: Config) -> Matrix2 {
    match c {
        Config::L1 => Matrix2::new(1u32, 0u32, 1u32, 1u32),
        Config::R1 => Matrix2::new(1u32, 1u32, 0u32, 1u32),
        Config::L2 => Matrix2::new(1u32, 0u32, 1u32, 0u32),
        Config::R2 => Matrix2::new(0u32, 1u32, 0u32, 1u32),
    }
}

/// `C_2 .. C_k` and the position of `τ`. Panics on the simple tunnel.
pub fn config_sequence(s: &StepSequence) -> (Vec<Config>, Disposition) {
    let runs = run_decomposition(s);
    let configs = runs.runs[1..]
        .iter()
        .map(|r| Config::from_run(r.letter, r.len))
        .collect();
    let disposition = if runs.trailing_d {
        Disposition::SpansBelow
    } else if s.last() == Step::Left {
        Disposition::LeftEndpoint
    } else {
        Disposition::RightEndpoint
    };
    (configs, disposition)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    /// `None` for the simple tunnel.
    pub binary: Option<BinaryInvariants>,
    pub steps: StepSequence,
    pub configs: Vec<Config>,
    pub matrices: Vec<Matrix2>,
    /// `M_k ⋯ M_2`.
    pub product: Matrix2,
    /// `(λ_i, ρ_i)` for `i = 1..=k`; empty for the simple tunnel.
    pub profile: Vec<(BigUint, BigUint)>,
    pub disposition: Disposition,
    pub depth: usize,
    pub count: BigUint,
}

impl CountResult {
    /// The number `k` of ∇-edges.
    pub fn k(&self) -> usize {
        self.profile.len()
    }
}

pub fn count_minimal_sequences(s: &StepSequence) -> CountResult {
    if s.is_simple() {
        return CountResult {
            binary: None,
            steps: s.clone(),
            configs: Vec::new(),
            matrices: Vec::new(),
            product: Matrix2::identity(),
            profile: Vec::new(),
            disposition: Disposition::SimpleTunnel,
            depth: 1,
            count: BigUint::one(),
        };
    }

    let (configs, disposition) = config_sequence(s);
    let matrices: Vec<Matrix2> = configs.iter().map(|&c| config_matrix(c)).collect();

    let mut profile = Vec::with_capacity(matrices.len() + 1);
    profile.push((BigUint::one(), BigUint::one()));
    let mut product = Matrix2::identity();
    for m in &matrices {
        let (lambda, rho) = profile.last().unwrap();
        let next = m.apply(lambda, rho);
        profile.push(next);
        product = m * &product;
    }

    let k = profile.len();
    let (lambda, rho) = profile.last().unwrap();
    let (count, depth, disposition) = match disposition {
        Disposition::SpansBelow => (lambda + rho, k + 1, disposition),
        Disposition::LeftEndpoint if k > 1 => (lambda.clone(), k, disposition),
        Disposition::RightEndpoint if k > 1 => (rho.clone(), k, disposition),
        // one run, no trailing D: τ is an endpoint of ∇(1), λ₁ = ρ₁ = 1
        _ => (rho.clone(), 1, Disposition::Depth1Special),
    };
    debug_assert!(!count.is_zero());

    CountResult {
        binary: Some(steps_to_binary(s).expect("not simple")),
        steps: s.clone(),
        configs,
        matrices,
        product,
        profile,
        disposition,
        depth,
        count,
    }
}

pub fn depth(s: &StepSequence) -> usize {
    count_minimal_sequences(s).depth
}

pub fn verbose_report(r: &CountResult) -> String {
    let mut out = String::new();
    let input = match &r.binary {
        Some(b) => format!("binary invariants '{b}', step sequence {}", r.steps),
        None => format!("step sequence {}", r.steps),
    };
    out.push_str(&format!("Tunnel with {input}.\n\n"));

    if r.disposition == Disposition::SimpleTunnel {
        out.push_str("This is a simple tunnel, at depth 1.\n\n");
        out.push_str("This tunnel has a unique minimal giant step construction.\n");
        return out;
    }

    if r.configs.is_empty() {
        out.push_str("There are no block configurations (k = 1).\n\n");
    } else {
        let names: Vec<&str> = r.configs.iter().map(|c| c.as_str()).collect();
        out.push_str(&format!(
            "The block configurations are {}.\n\n",
            names.join(", ")
        ));
        out.push_str("The transformation matrices M_2, ..., M_k are:\n\n");
        for m in &r.matrices {
            out.push_str(&format!("   {m}\n"));
        }
        out.push_str(&format!("\nand M_k * ... * M_2 is {}.\n\n", r.product));
    }

    let (lambda, rho) = r.profile.last().expect("nonsimple results have a profile");
    let k = r.k();
    let position = match r.disposition {
        Disposition::SpansBelow => format!("tau spans a 2-simplex below nabla({k})"),
        Disposition::LeftEndpoint => format!("tau is the left endpoint of nabla({k})"),
        Disposition::RightEndpoint => format!("tau is the right endpoint of nabla({k})"),
        _ => "tau is adjacent to pi0".to_string(),
    };
    out.push_str(&format!(
        "(lambda_{k}, rho_{k}) = ({lambda}, {rho}); {position}; depth {}.\n\n",
        r.depth
    ));
    if r.count.is_one() {
        out.push_str("This tunnel has a unique minimal giant step construction.\n");
    } else {
        out.push_str(&format!(
            "This tunnel has {} minimal giant step constructions.\n",
            r.count
        ));
    }
    out
}
