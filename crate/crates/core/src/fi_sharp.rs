//! The FB ↔ FI♯ correspondence at the level of multiplicities.
//!
//! `M(W)_n = ⊕_{a ≤ n} Ind_{S_a × S_{n-a}}^{S_n} W_a ⊠ ℚ` is evaluated with the
//! Pieri rule. `H₀` is computed by the degree recursion
//! `H₀(V)_n = V_n − M(H₀(V)_{<n})_n`, which is only valid for induced modules,
//! so every subtraction is checked and a negative multiplicity is an error.
//! After the last generator degree the module is rebuilt on a window of
//! further degrees and compared with the input.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::fb_modules::{contains, Containment, FBModule, FbError};
use crate::partitions::Partition;
use crate::rep_algebra::{pieri_induct, RepDecomposition, RepError};

/// Degrees checked past the vanishing bound unless a caller asks for more.
pub const DEFAULT_WINDOW: usize = 1;

#[derive(Debug, Error)]
pub enum FiSharpError {
    #[error("not an induced module: degree {degree} needs {needed} copies of {partition} but has {available}")]
    NotInduced {
        degree: usize,
        partition: Partition,
        needed: String,
        available: String,
    },
    #[error("vanishing bound {bound} too small: degree {degree} still has a generator {partition}")]
    VanishBoundTooSmall {
        bound: usize,
        degree: usize,
        partition: Partition,
    },
    #[error("consistency window must be at least 1")]
    EmptyWindow,
    #[error("generator modules have finite support; got a stable tail")]
    InfiniteSupport,
    #[error("cannot parse generator module: {0}")]
    Parse(String),
    #[error(transparent)]
    Fb(#[from] FbError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorProvenance {
    ComputedH0,
    Constructed,
}

impl fmt::Display for GeneratorProvenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorProvenance::ComputedH0 => "computed-h0",
            GeneratorProvenance::Constructed => "constructed",
        })
    }
}

/// A finitely supported FB-module `W`, standing for the FI♯-module `M(W)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorModule {
    module: FBModule,
    provenance: GeneratorProvenance,
}

impl GeneratorModule {
    pub fn new(module: &FBModule, provenance: GeneratorProvenance) -> Result<Self, FiSharpError> {
        if module.stable_tail().is_some() {
            return Err(FiSharpError::InfiniteSupport);
        }
        let mut finite = FBModule::finite();
        for (n, d) in module.support() {
            finite.insert(n, d.clone())?;
        }
        Ok(Self {
            module: finite,
            provenance,
        })
    }

    pub fn constructed(module: &FBModule) -> Result<Self, FiSharpError> {
        Self::new(module, GeneratorProvenance::Constructed)
    }

    /// A single representation placed in its own degree.
    pub fn single(rep: RepDecomposition) -> Self {
        let mut module = FBModule::finite();
        let n = rep.n();
        module.insert(n, rep).expect("weight equals degree");
        Self {
            module,
            provenance: GeneratorProvenance::Constructed,
        }
    }

    pub fn zero() -> Self {
        Self {
            module: FBModule::finite(),
            provenance: GeneratorProvenance::Constructed,
        }
    }

    pub fn module(&self) -> &FBModule {
        &self.module
    }

    pub fn provenance(&self) -> GeneratorProvenance {
        self.provenance
    }

    pub fn at(&self, n: usize) -> RepDecomposition {
        self.module.at(n).expect("generator modules are known in every degree")
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &RepDecomposition)> {
        self.module.support()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.module.max_support_degree()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.module.min_support_degree()
    }

    pub fn is_zero(&self) -> bool {
        self.module.is_zero()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let module = self.module.direct_sum(&other.module).expect("finite modules");
        Self {
            module,
            provenance: GeneratorProvenance::Constructed,
        }
    }

    pub fn to_text(&self) -> String {
        let mut text = self.module.to_text_with_header("genmod v1");
        text.push_str(&format!("provenance={}\n", self.provenance));
        text
    }

    pub fn from_text(text: &str) -> Result<Self, FiSharpError> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, "genmod v1")) => {}
            other => {
                return Err(FiSharpError::Parse(format!(
                    "expected header 'genmod v1', found {:?}",
                    other.map(|l| l.1)
                )))
            }
        }
        let (module, extras) = FBModule::parse_body(lines, true)?;
        let provenance = match extras.iter().find(|(k, _)| k == "provenance").map(|(_, v)| v.as_str()) {
            Some("computed-h0") => GeneratorProvenance::ComputedH0,
            Some("constructed") => GeneratorProvenance::Constructed,
            Some(other) => return Err(FiSharpError::Parse(format!("unknown provenance {other:?}"))),
            None => return Err(FiSharpError::Parse("missing provenance line".into())),
        };
        Self::new(&module, provenance)
    }
}

/// `M(W)_n`.
pub fn m_functor(w: &GeneratorModule, n: usize) -> Result<RepDecomposition, FiSharpError> {
    let mut out = RepDecomposition::zero(n);
    for (a, wa) in w.support() {
        if a > n {
            break;
        }
        out = out.add(&pieri_induct(wa, n)?)?;
    }
    Ok(out)
}

/// `M(W)` in degrees `0..=up_to`.
pub fn m_module(w: &GeneratorModule, up_to: usize) -> Result<FBModule, FiSharpError> {
    FBModule::from_fn(up_to, |n| m_functor(w, n))
}

/// `M(m)_n`, the FI-module spanned by injections `[m] ↪ [n]`.
pub fn free_module(m: usize, n: usize) -> Result<RepDecomposition, FiSharpError> {
    m_functor(&GeneratorModule::single(RepDecomposition::regular(m)), n)
}

/// `H₀(v)` with generators in degrees `≤ vanish_above` and the default window.
pub fn h_zero(v: &FBModule, vanish_above: usize) -> Result<GeneratorModule, FiSharpError> {
    h_zero_with_window(v, vanish_above, DEFAULT_WINDOW)
}

/// `H₀(v)` by the degree recursion, then checks that `M(H₀(v))` reproduces `v`
/// on `(vanish_above, vanish_above + window]`.
pub fn h_zero_with_window(v: &FBModule, vanish_above: usize, window: usize) -> Result<GeneratorModule, FiSharpError> {
    if window == 0 {
        return Err(FiSharpError::EmptyWindow);
    }
    let mut gens = GeneratorModule {
        module: FBModule::finite(),
        provenance: GeneratorProvenance::ComputedH0,
    };
    for n in 0..=vanish_above {
        let vn = v.at(n)?;
        let induced = m_functor(&gens, n)?;
        let rest = vn.checked_sub(&induced).map_err(|e| FiSharpError::NotInduced {
            degree: n,
            partition: e.partition,
            needed: e.left.to_string(),
            available: e.right.to_string(),
        })?;
        gens.module.insert(n, rest)?;
    }
    for n in vanish_above + 1..=vanish_above + window {
        let vn = v.at(n)?;
        let induced = m_functor(&gens, n)?;
        match vn.checked_sub(&induced) {
            Err(e) => {
                return Err(FiSharpError::NotInduced {
                    degree: n,
                    partition: e.partition,
                    needed: e.left.to_string(),
                    available: e.right.to_string(),
                })
            }
            Ok(rest) => {
                if let Some((lambda, _)) = rest.iter().next() {
                    return Err(FiSharpError::VanishBoundTooSmall {
                        bound: vanish_above,
                        degree: n,
                        partition: lambda.clone(),
                    });
                }
            }
        }
    }
    Ok(gens)
}

/// Degreewise containment of generator modules, over every degree either supports.
pub fn generators_contain(big: &GeneratorModule, small: &GeneratorModule) -> Containment {
    let top = big.max_degree().unwrap_or(0).max(small.max_degree().unwrap_or(0));
    contains(big.module(), small.module(), top).expect("generator modules are total")
}

/// Whether `M(H₀(x)) ↪ M(H₀(y))` as FI♯-modules.
pub fn fisharp_contains(x: &FBModule, y: &FBModule, vanish_above: usize) -> Result<Containment, FiSharpError> {
    let small = h_zero(x, vanish_above)?;
    let big = h_zero(y, vanish_above)?;
    Ok(generators_contain(&big, &small))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(text: &str, n: usize) -> RepDecomposition {
        RepDecomposition::parse(text, n).unwrap()
    }

    #[test]
    fn m_of_v2() {
        let w = GeneratorModule::single(rep("1*[2]", 2));
        assert_eq!(m_functor(&w, 4).unwrap(), rep("1*[4] + 1*[3,1] + 1*[2,2]", 4));
        assert!(m_functor(&w, 1).unwrap().is_zero());
        assert!(m_functor(&GeneratorModule::zero(), 5).unwrap().is_zero());
    }

    #[test]
    fn free_modules() {
        for n in 0..6 {
            assert_eq!(free_module(0, n).unwrap(), RepDecomposition::irreducible(Partition::row(n)));
        }
        for n in 2..7 {
            let expected = RepDecomposition::from_terms(
                n,
                [
                    (Partition::row(n), 1u32),
                    (Partition::new(vec![n - 1, 1]).unwrap(), 1u32),
                ],
            )
            .unwrap();
            assert_eq!(free_module(1, n).unwrap(), expected);
        }
        assert_eq!(free_module(2, 2).unwrap(), rep("1*[2] + 1*[1,1]", 2));
    }

    #[test]
    fn h_zero_inverts_m() {
        let w = GeneratorModule::single(rep("1*[2]", 2));
        let v = m_module(&w, 5).unwrap();
        let h = h_zero(&v, 4).unwrap();
        assert_eq!(generators_contain(&h, &w), Containment::Contained);
        assert_eq!(generators_contain(&w, &h), Containment::Contained);
        assert_eq!(h.provenance(), GeneratorProvenance::ComputedH0);
    }

    #[test]
    fn h_zero_rejects_non_induced() {
        // The sign representation in every degree is not induced.
        let mut v = FBModule::bounded(4);
        for n in 0..=4 {
            v.insert(n, RepDecomposition::irreducible(Partition::column(n))).unwrap();
        }
        assert!(matches!(h_zero(&v, 3), Err(FiSharpError::NotInduced { degree: 2, .. })));
    }

    #[test]
    fn h_zero_detects_small_bound() {
        let w = GeneratorModule::single(rep("1*[2,1]", 3));
        let v = m_module(&w, 4).unwrap();
        assert!(matches!(
            h_zero(&v, 2),
            Err(FiSharpError::VanishBoundTooSmall { bound: 2, degree: 3, .. })
        ));
        assert!(matches!(h_zero_with_window(&v, 3, 0), Err(FiSharpError::EmptyWindow)));
    }

    #[test]
    fn y_does_not_contain_z() {
        let z = m_module(&GeneratorModule::single(rep("1*[2]", 2)), 6).unwrap();
        let y_gens = GeneratorModule::single(rep("1*[1]", 1)).direct_sum(&GeneratorModule::single(rep("1*[2,1]", 3)));
        let y = m_module(&y_gens, 6).unwrap();
        assert!(contains(&y, &z, 5).unwrap().holds());
        let c = fisharp_contains(&z, &y, 5).unwrap();
        assert_eq!(c.witness().map(|w| w.degree), Some(2));
        assert!(fisharp_contains(&y, &y, 5).unwrap().holds());
    }

    #[test]
    fn genmod_text() {
        let w = GeneratorModule::single(rep("1*[2]", 2)).direct_sum(&GeneratorModule::single(rep("2*[2,1]", 3)));
        let text = w.to_text();
        assert_eq!(text, "genmod v1\nn=2 : 1*[2]\nn=3 : 2*[2,1]\nprovenance=constructed\n");
        assert_eq!(GeneratorModule::from_text(&text).unwrap(), w);
        assert!(GeneratorModule::from_text("genmod v1\nn=2 : 1*[2]\n").is_err());
    }
}
