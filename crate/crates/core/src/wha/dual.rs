//! Duality by transposition and the three twisted versions.

use std::fmt;
use std::str::FromStr;

use super::Wha;
use crate::error::{Result, WhaError};
use crate::field::Field;
use crate::linear::{Mat, Tensor3};

const DUAL_PREFIX: &str = "δ_";

/// Label of the dual basis vector. Applying it twice gives back the label.
pub fn dual_label(label: &str) -> String {
    let mut depth = 0;
    let mut rest = label;
    while let Some(r) = rest.strip_prefix(DUAL_PREFIX) {
        depth += 1;
        rest = r;
    }
    if depth % 2 == 0 {
        format!("{DUAL_PREFIX}{label}")
    } else {
        label[DUAL_PREFIX.len()..].to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Twist {
    Op,
    Cop,
    OpCop,
}

impl Twist {
    pub const ALL: [Twist; 3] = [Twist::Op, Twist::Cop, Twist::OpCop];
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Twist::Op => "op",
            Twist::Cop => "cop",
            Twist::OpCop => "opcop",
        })
    }
}

impl FromStr for Twist {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "op" => Ok(Twist::Op),
            "cop" => Ok(Twist::Cop),
            "opcop" => Ok(Twist::OpCop),
            other => Err(format!("unknown twist '{other}' (expected op, cop or opcop)")),
        }
    }
}

impl<F: Field> Wha<F> {
    /// The dual Â on the dual basis βⁱ, with every structure map transposed.
    pub fn dual(&self) -> Wha<F> {
        let f = self.field();
        let n = self.dim();
        let mult: Vec<_> = self.comult().entries().iter().map(|(k, i, j, c)| (*i, *j, *k, c.clone())).collect();
        let comult: Vec<_> = self.mult().entries().iter().map(|(i, j, k, c)| (*k, *i, *j, c.clone())).collect();
        let mult = Tensor3::new(f, [n, n, n], mult).expect("transposed dims");
        let comult = Tensor3::new(f, [n, n, n], comult).expect("transposed dims");
        // ⟨φ*, x⟩ = conj⟨φ, S(x)*⟩
        let star = self.star().map(|t| t.conj().mul(self.antipode()).transpose());
        Wha::new(
            f.clone(),
            self.labels().iter().map(|l| dual_label(l)).collect(),
            mult,
            self.counit().clone(),
            comult,
            self.unit().clone(),
            self.antipode().transpose(),
            star,
        )
        .expect("dual shapes")
    }

    /// A^op, A_cop or A^op_cop. The antipode becomes S⁻¹ for the first two.
    pub fn twist(&self, kind: Twist) -> Result<Wha<F>> {
        let f = self.field();
        let swap_mult = matches!(kind, Twist::Op | Twist::OpCop);
        let swap_comult = matches!(kind, Twist::Cop | Twist::OpCop);
        let mult = if swap_mult { self.mult().permute(f, [1, 0, 2]) } else { self.mult().clone() };
        let comult = if swap_comult { self.comult().permute(f, [0, 2, 1]) } else { self.comult().clone() };
        let antipode: Mat<F> = if kind == Twist::OpCop {
            self.antipode().clone()
        } else {
            self.antipode_inverse_matrix()
                .cloned()
                .ok_or_else(|| WhaError::NotAWha("antipode is singular, twist undefined".into()))?
        };
        Wha::new(
            f.clone(),
            self.labels().to_vec(),
            mult,
            self.unit().clone(),
            comult,
            self.counit().clone(),
            antipode,
            self.star().cloned(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_label_is_involutive() {
        for l in ["g", "δ_g", "δ_δ_g", "e11"] {
            assert_eq!(dual_label(&dual_label(l)), l);
        }
        assert_eq!(dual_label("g"), "δ_g");
        assert_eq!(dual_label("δ_g"), "g");
    }
}
