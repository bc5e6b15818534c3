use crate::scalar::Scalar;

/// The absolute constants of the concentration argument.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct EnvelopeConstants<T> {
    pub c_a: T,
    pub c_h: T,
    pub c_py: T,
    pub c_l: T,
    pub c_x: T,
    pub c_zeta: T,
    pub c_alpha: T,
    pub c_vb: T,
    pub c_b: T,
    pub c_t: T,
}

impl<T: Scalar> Default for EnvelopeConstants<T> {
    fn default() -> Self {
        Self {
            c_a: T::lit(16.0),
            c_h: T::lit(20.0),
            c_py: T::lit(2.0),
            c_l: T::lit(12.0),
            c_x: T::lit(8000.0),
            c_zeta: T::lit(800.0),
            c_alpha: T::lit(70000.0),
            c_vb: T::lit(700.0),
            c_b: T::lit(1200.0),
            c_t: T::lit(2000.0),
        }
    }
}

/// One of the ten constraints on the constants, as `lhs > rhs` (or `>=`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Condition<T> {
    pub label: &'static str,
    pub lhs: T,
    pub rhs: T,
    pub strict: bool,
}

impl<T: Scalar> Condition<T> {
    pub fn holds(&self) -> bool {
        if self.strict {
            self.lhs > self.rhs
        } else {
            self.lhs >= self.rhs
        }
    }
}

impl<T: Scalar> EnvelopeConstants<T> {
    /// Every constant multiplied by `factor`.
    pub fn scaled(&self, factor: T) -> Self {
        Self {
            c_a: self.c_a * factor,
            c_h: self.c_h * factor,
            c_py: self.c_py * factor,
            c_l: self.c_l * factor,
            c_x: self.c_x * factor,
            c_zeta: self.c_zeta * factor,
            c_alpha: self.c_alpha * factor,
            c_vb: self.c_vb * factor,
            c_b: self.c_b * factor,
            c_t: self.c_t * factor,
        }
    }

    /// The ten constraints, in order.
    pub fn conditions(&self) -> [Condition<T>; 10] {
        let l = T::lit;
        let cond = |label, lhs, rhs| Condition { label, lhs, rhs, strict: true };
        [
            cond("C_alpha > 8 C_zeta", self.c_alpha, l(8.0) * self.c_zeta),
            cond("(C_A/4)^2 / 12 > 1", (self.c_a / l(4.0)).powi(2) / l(12.0), T::one()),
            cond("C_h > 9/8 C_A", self.c_h, l(9.0) / l(8.0) * self.c_a),
            cond("C_py > 1 + C_alpha / C_T^(3/2)", self.c_py, T::one() + self.c_alpha / self.c_t.powf(l(1.5))),
            cond("C_l^2 / (6 C_py + 4 C_l) > 2", self.c_l.powi(2) / (l(6.0) * self.c_py + l(4.0) * self.c_l), l(2.0)),
            cond("C_x / 7 - C_l sqrt(C_x) > 0", self.c_x / l(7.0) - self.c_l * self.c_x.sqrt(), T::zero()),
            cond(
                "C_zeta > max(2 C_l^2, C_x^(4/5) / 3 + 2^(3/4) C_l C_x^(3/10))",
                self.c_zeta,
                (l(2.0) * self.c_l.powi(2)).max(
                    self.c_x.powf(l(0.8)) / l(3.0) + l(2.0).powf(l(0.75)) * self.c_l * self.c_x.powf(l(0.3)),
                ),
            ),
            cond("C_B > 4/3 C_zeta", self.c_b, l(4.0) / l(3.0) * self.c_zeta),
            Condition {
                label: "C_vB >= 2/3 C_zeta",
                lhs: self.c_vb,
                rhs: l(2.0) / l(3.0) * self.c_zeta,
                strict: false,
            },
            cond(
                "(C_B^2 / 4) / (2 (C_vB + C_B / 2)) > 1",
                self.c_b.powi(2) / l(4.0) / (l(2.0) * (self.c_vb + self.c_b / l(2.0))),
                T::one(),
            ),
        ]
    }

    pub fn all_conditions_hold(&self) -> bool {
        self.conditions().iter().all(Condition::holds)
    }
}

/// The three envelope values at one time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Envelopes<T> {
    pub f_a: T,
    pub f_b: T,
    pub f_zeta: T,
}

/// `n^{-2/5} ln^{2/5} n`: the value of `1 - t` at which `f_b` and `f_ζ`
/// change branch.
pub fn branch_threshold<T: Scalar>(n: T) -> T {
    (n.ln() / n).powf(T::lit(0.4))
}

/// `n^{1/5} ln^{4/5} n`.
fn plateau<T: Scalar>(n: T) -> T {
    n.powf(T::lit(0.2)) * n.ln().powf(T::lit(0.8))
}

/// `f_a`, `f_b` and `f_ζ` at time `t` for `n` vertices. `n` is taken as a
/// real number so the formulas can be probed between integers.
pub fn envelopes<T: Scalar>(t: T, nn: T, c: &EnvelopeConstants<T>) -> Envelopes<T> {
    let s = T::one() - t;
    let ln_n = nn.ln();
    let f_a = c.c_a * s.powf(T::lit(0.75)) * (nn * ln_n).sqrt();
    let early = ln_n / s.sqrt();
    let f_b = if s > branch_threshold(nn) {
        c.c_b * early
    } else {
        -c.c_b * plateau(nn) * s.ln()
    };
    let f_zeta = c.c_zeta * early.min(plateau(nn));
    Envelopes { f_a, f_b, f_zeta }
}

/// `n - C_T n^{7/15} ln^{6/5} n`, the stopping horizon of the concentration
/// theorem. Negative for every `n` a simulation can reach with the default
/// `C_T`.
pub fn stopping_horizon<T: Scalar>(n: usize, c: &EnvelopeConstants<T>) -> T {
    let nn = T::from_count(n);
    nn - c.c_t * nn.powf(T::lit(7.0 / 15.0)) * nn.ln().powf(T::lit(1.2))
}

/// `n - n^{3/5} ln n`, the horizon used for checks at simulation scale.
pub fn default_horizon<T: Scalar>(n: usize) -> T {
    let nn = T::from_count(n);
    nn - nn.powf(T::lit(0.6)) * nn.ln()
}

/// Upper bound on `α(i)`: `C_α ln n (1-t)^{-1/2}` up to step
/// `n - n^{3/5} ln^{2/5} n`, and `C_α n^{1/5} ln^{9/5} n` afterwards.
pub fn alpha_bound<T: Scalar>(i: usize, n: usize, c: &EnvelopeConstants<T>) -> T {
    let nn = T::from_count(n);
    let ln_n = nn.ln();
    let cut = nn - nn.powf(T::lit(0.6)) * ln_n.powf(T::lit(0.4));
    let i = T::from_count(i);
    if i <= cut {
        c.c_alpha * ln_n / (T::one() - i / nn).sqrt()
    } else {
        c.c_alpha * nn.powf(T::lit(0.2)) * ln_n.powf(T::lit(1.8))
    }
}
