//! Linear-optics unitaries and loss.

use std::collections::{BTreeMap, HashMap};

use crate::density::{FockDensity, Occupation};
use crate::error::FockError;
use crate::scalar::Scalar;
use crate::{binomial, factorial, STRUCTURAL_TOL};

type Branches = Vec<((u8, u8), f64)>;

/// Image of `|n1 n2⟩` under `a† → t a† + r b†`, `b† → r a† − t b†`.
fn split(n1: u8, n2: u8, t: f64, r: f64) -> Branches {
    let (n1u, n2u) = (n1 as usize, n2 as usize);
    let total = n1u + n2u;
    let norm = (factorial(n1u) * factorial(n2u)).sqrt();
    let mut acc = vec![0.0; total + 1];
    for i in 0..=n1u {
        let ci = binomial(n1u, i) * t.powi(i as i32) * r.powi((n1u - i) as i32);
        for j in 0..=n2u {
            let cj = binomial(n2u, j) * r.powi(j as i32) * (-t).powi((n2u - j) as i32);
            acc[i + j] += ci * cj;
        }
    }
    acc.iter()
        .enumerate()
        .filter(|(_, &c)| c.abs() > STRUCTURAL_TOL)
        .map(|(o1, &c)| {
            let o2 = total - o1;
            ((o1 as u8, o2 as u8), c * (factorial(o1) * factorial(o2)).sqrt() / norm)
        })
        .collect()
}

impl<S: Scalar> FockDensity<S> {
    /// Two-mode beam splitter on `m1`, `m2`.
    pub fn apply_beam_splitter(&self, m1: &str, m2: &str, t: f64, r: f64) -> Result<Self, FockError> {
        if (t * t + r * r - 1.0).abs() > STRUCTURAL_TOL {
            return Err(FockError::NotUnitary { t, r });
        }
        let i1 = self.mode_index(m1)?;
        let i2 = self.mode_index(m2)?;
        if i1 == i2 {
            return Err(FockError::DuplicateMode(m1.to_string()));
        }
        let cutoff = self.cutoff();
        let mut cache: HashMap<(u8, u8), Branches> = HashMap::new();
        let mut image = |n1: u8, n2: u8| -> Result<Branches, FockError> {
            let b = cache.entry((n1, n2)).or_insert_with(|| split(n1, n2, t, r)).clone();
            for &((o1, o2), _) in &b {
                let (mode, occupation) = if o1 > cutoff { (m1, o1) } else { (m2, o2) };
                if occupation > cutoff {
                    return Err(FockError::CutoffExceeded {
                        mode: mode.to_string(),
                        occupation: occupation as usize,
                        cutoff,
                    });
                }
            }
            Ok(b)
        };
        let mut out: BTreeMap<(Occupation, Occupation), S> = BTreeMap::new();
        for (k, b, v) in self.entries() {
            let kb = image(k[i1], k[i2])?;
            let bb = image(b[i1], b[i2])?;
            for &((ko1, ko2), kc) in &kb {
                for &((bo1, bo2), bc) in &bb {
                    let mut k2 = k.clone();
                    k2[i1] = ko1;
                    k2[i2] = ko2;
                    let mut b2 = b.clone();
                    b2[i1] = bo1;
                    b2[i2] = bo2;
                    let add = v.scale(kc * bc);
                    out.entry((k2, b2)).and_modify(|e| *e = e.clone() + add.clone()).or_insert(add);
                }
            }
        }
        Ok(Self::from_parts(self.modes().to_vec(), cutoff, out))
    }

    /// Bosonic loss with survival probability `eta` on mode `m`.
    pub fn apply_loss(&self, m: &str, eta: f64) -> Result<Self, FockError> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(FockError::NotAProbability { name: "eta", value: eta });
        }
        let i = self.mode_index(m)?;
        let mut out: BTreeMap<(Occupation, Occupation), S> = BTreeMap::new();
        for (k, b, v) in self.entries() {
            let (n, n2) = (k[i] as usize, b[i] as usize);
            for lost in 0..=n.min(n2) {
                let w = (binomial(n, lost) * binomial(n2, lost)).sqrt()
                    * eta.powf((n + n2) as f64 / 2.0 - lost as f64)
                    * (1.0 - eta).powi(lost as i32);
                if w == 0.0 {
                    continue;
                }
                let mut k2 = k.clone();
                k2[i] -= lost as u8;
                let mut b2 = b.clone();
                b2[i] -= lost as u8;
                let add = v.scale(w);
                out.entry((k2, b2)).and_modify(|e| *e = e.clone() + add.clone()).or_insert(add);
            }
        }
        Ok(Self::from_parts(self.modes().to_vec(), self.cutoff(), out))
    }

    /// π phase shift on mode `m`: entries pick up `(−1)^(n + n')`.
    pub fn apply_phase_flip(&self, m: &str) -> Result<Self, FockError> {
        let i = self.mode_index(m)?;
        let entries = self
            .raw_entries()
            .iter()
            .map(|((k, b), v)| {
                let v = if (k[i] + b[i]) % 2 == 1 { -v.clone() } else { v.clone() };
                ((k.clone(), b.clone()), v)
            })
            .collect();
        Ok(Self::from_parts(self.modes().to_vec(), self.cutoff(), entries))
    }
}
