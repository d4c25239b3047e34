use std::collections::BTreeMap;

use crate::error::FockError;
use crate::scalar::Scalar;

/// Occupation numbers, one per mode, in mode order.
pub type Occupation = Vec<u8>;

/// Sparse density operator over labelled bosonic modes with a shared occupation cutoff.
#[derive(Clone, Debug, PartialEq)]
pub struct FockDensity<S> {
    modes: Vec<String>,
    cutoff: u8,
    entries: BTreeMap<(Occupation, Occupation), S>,
}

impl<S: Scalar> FockDensity<S> {
    /// The zero operator.
    pub fn zero<L: AsRef<str>>(modes: &[L], cutoff: u8) -> Result<Self, FockError> {
        let modes: Vec<String> = modes.iter().map(|m| m.as_ref().to_string()).collect();
        for (i, m) in modes.iter().enumerate() {
            if modes[..i].contains(m) {
                return Err(FockError::DuplicateMode(m.clone()));
            }
        }
        Ok(Self { modes, cutoff, entries: BTreeMap::new() })
    }

    pub fn vacuum<L: AsRef<str>>(modes: &[L], cutoff: u8) -> Result<Self, FockError> {
        let mut rho = Self::zero(modes, cutoff)?;
        let v = vec![0u8; rho.modes.len()];
        rho.entries.insert((v.clone(), v), S::one());
        Ok(rho)
    }

    /// `Σ_ij a_i a_j* |i⟩⟨j|` from a list of (occupation, amplitude).
    pub fn from_pure<L: AsRef<str>>(
        modes: &[L],
        cutoff: u8,
        amplitudes: &[(Occupation, S)],
    ) -> Result<Self, FockError> {
        let mut rho = Self::zero(modes, cutoff)?;
        for (occ, _) in amplitudes {
            rho.check_occupation(occ)?;
        }
        for (ki, ai) in amplitudes {
            for (bj, aj) in amplitudes {
                rho.accumulate(ki.clone(), bj.clone(), ai.clone() * aj.conj());
            }
        }
        rho.prune();
        Ok(rho)
    }

    /// Build from explicit matrix elements; repeated keys are summed.
    pub fn from_entries<L, I>(modes: &[L], cutoff: u8, entries: I) -> Result<Self, FockError>
    where
        L: AsRef<str>,
        I: IntoIterator<Item = (Occupation, Occupation, S)>,
    {
        let mut rho = Self::zero(modes, cutoff)?;
        for (k, b, v) in entries {
            rho.check_occupation(&k)?;
            rho.check_occupation(&b)?;
            rho.accumulate(k, b, v);
        }
        rho.prune();
        Ok(rho)
    }

    fn check_occupation(&self, occ: &[u8]) -> Result<(), FockError> {
        if occ.len() != self.modes.len() {
            return Err(FockError::ShapeMismatch { expected: self.modes.len(), got: occ.len() });
        }
        if let Some(i) = occ.iter().position(|&n| n > self.cutoff) {
            return Err(FockError::CutoffExceeded {
                mode: self.modes[i].clone(),
                occupation: occ[i] as usize,
                cutoff: self.cutoff,
            });
        }
        Ok(())
    }

    pub(crate) fn accumulate(&mut self, ket: Occupation, bra: Occupation, v: S) {
        match self.entries.get_mut(&(ket.clone(), bra.clone())) {
            Some(e) => *e = e.clone() + v,
            None => {
                self.entries.insert((ket, bra), v);
            }
        }
    }

    /// Drop entries that are exactly zero.
    pub fn prune(&mut self) {
        self.entries.retain(|_, v| v.magnitude() != 0.0);
    }

    pub fn modes(&self) -> &[String] {
        &self.modes
    }

    pub fn cutoff(&self) -> u8 {
        self.cutoff
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Occupation, &Occupation, &S)> {
        self.entries.iter().map(|((k, b), v)| (k, b, v))
    }

    /// Matrix element, zero when absent.
    pub fn get(&self, ket: &[u8], bra: &[u8]) -> S {
        self.entries.get(&(ket.to_vec(), bra.to_vec())).cloned().unwrap_or_else(S::zero)
    }

    pub fn mode_index(&self, name: &str) -> Result<usize, FockError> {
        self.modes.iter().position(|m| m == name).ok_or_else(|| FockError::UnknownMode(name.to_string()))
    }

    /// Same operator with a different cutoff; lowering fails if occupied levels would be cut.
    pub fn with_cutoff(&self, cutoff: u8) -> Result<Self, FockError> {
        let mut out = self.clone();
        out.cutoff = cutoff;
        for (k, b) in self.entries.keys() {
            out.check_occupation(k)?;
            out.check_occupation(b)?;
        }
        Ok(out)
    }

    pub fn relabel<L: AsRef<str>>(&self, modes: &[L]) -> Result<Self, FockError> {
        let mut out = Self::zero(modes, self.cutoff)?;
        if out.modes.len() != self.modes.len() {
            return Err(FockError::ShapeMismatch { expected: self.modes.len(), got: out.modes.len() });
        }
        out.entries = self.entries.clone();
        Ok(out)
    }

    /// Reorder modes to the given order.
    pub fn reorder<L: AsRef<str>>(&self, order: &[L]) -> Result<Self, FockError> {
        if order.len() != self.modes.len() {
            return Err(FockError::ShapeMismatch { expected: self.modes.len(), got: order.len() });
        }
        let idx = order.iter().map(|m| self.mode_index(m.as_ref())).collect::<Result<Vec<_>, _>>()?;
        let mut out = Self::zero(order, self.cutoff)?;
        for ((k, b), v) in &self.entries {
            let k2 = idx.iter().map(|&i| k[i]).collect();
            let b2 = idx.iter().map(|&i| b[i]).collect();
            out.entries.insert((k2, b2), v.clone());
        }
        Ok(out)
    }

    /// `self ⊗ other`; mode sets must be disjoint. The cutoff is the larger of the two.
    pub fn tensor(&self, other: &Self) -> Result<Self, FockError> {
        let modes: Vec<&str> = self.modes.iter().chain(&other.modes).map(String::as_str).collect();
        let mut out = Self::zero(&modes, self.cutoff.max(other.cutoff))?;
        for ((k1, b1), v1) in &self.entries {
            for ((k2, b2), v2) in &other.entries {
                let k: Occupation = k1.iter().chain(k2).copied().collect();
                let b: Occupation = b1.iter().chain(b2).copied().collect();
                out.accumulate(k, b, v1.clone() * v2.clone());
            }
        }
        out.prune();
        Ok(out)
    }

    pub fn trace(&self) -> S {
        self.entries.iter().filter(|((k, b), _)| k == b).fold(S::zero(), |acc, (_, v)| acc + v.clone())
    }

    /// Trace out the named modes.
    pub fn partial_trace<L: AsRef<str>>(&self, traced: &[L]) -> Result<Self, FockError> {
        let idx = traced.iter().map(|m| self.mode_index(m.as_ref())).collect::<Result<Vec<_>, _>>()?;
        let keep: Vec<usize> = (0..self.modes.len()).filter(|i| !idx.contains(i)).collect();
        let names: Vec<&str> = keep.iter().map(|&i| self.modes[i].as_str()).collect();
        let mut out = Self::zero(&names, self.cutoff)?;
        for ((k, b), v) in &self.entries {
            if idx.iter().any(|&i| k[i] != b[i]) {
                continue;
            }
            let k2 = keep.iter().map(|&i| k[i]).collect();
            let b2 = keep.iter().map(|&i| b[i]).collect();
            out.accumulate(k2, b2, v.clone());
        }
        out.prune();
        Ok(out)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|v| v.scale(s))
    }

    pub fn scale_by(&self, s: &S) -> Self {
        let mut out = self.map(|v| v.clone() * s.clone());
        out.prune();
        out
    }

    /// Entrywise sum; modes must agree in order.
    pub fn add(&self, other: &Self) -> Result<Self, FockError> {
        if self.modes != other.modes {
            return Err(FockError::ShapeMismatch { expected: self.modes.len(), got: other.modes.len() });
        }
        let mut out = self.clone();
        out.cutoff = self.cutoff.max(other.cutoff);
        for ((k, b), v) in &other.entries {
            out.accumulate(k.clone(), b.clone(), v.clone());
        }
        out.prune();
        Ok(out)
    }

    /// Divide by the trace.
    pub fn normalize(&self) -> Result<Self, FockError> {
        let tr = self.trace();
        let inv = S::one().try_div(&tr)?;
        Ok(self.scale_by(&inv))
    }

    /// `⟨ψ|ρ|ψ⟩ / Tr ρ` for a pure target given as (occupation, amplitude) pairs.
    pub fn fidelity(&self, target: &[(Occupation, S)]) -> Result<S, FockError> {
        let mut num = S::zero();
        for (ki, ai) in target {
            for (bj, aj) in target {
                let e = self.get(ki, bj);
                num = num + ai.conj() * e * aj.clone();
            }
        }
        num.try_div(&self.trace())
    }

    /// Largest deviation from `ρ = ρ†`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for ((k, b), v) in &self.entries {
            let w = self.get(b, k).conj();
            worst = worst.max((v.clone() - w).magnitude());
        }
        worst
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> FockDensity<T> {
        FockDensity {
            modes: self.modes.clone(),
            cutoff: self.cutoff,
            entries: self.entries.iter().map(|(key, v)| (key.clone(), f(v))).collect(),
        }
    }

    /// Largest entrywise difference; modes must agree.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, FockError> {
        if self.modes != other.modes {
            return Err(FockError::ShapeMismatch { expected: self.modes.len(), got: other.modes.len() });
        }
        let mut worst = 0.0f64;
        for ((k, b), v) in &self.entries {
            worst = worst.max((v.clone() - other.get(k, b)).magnitude());
        }
        for ((k, b), v) in &other.entries {
            if !self.entries.contains_key(&(k.clone(), b.clone())) {
                worst = worst.max(v.magnitude());
            }
        }
        Ok(worst)
    }

    /// Highest total occupation over kets and bras.
    pub fn max_total_occupation(&self) -> usize {
        self.entries
            .keys()
            .flat_map(|(k, b)| [k, b])
            .map(|o| o.iter().map(|&n| n as usize).sum::<usize>())
            .max()
            .unwrap_or(0)
    }

    pub(crate) fn from_parts(modes: Vec<String>, cutoff: u8, entries: BTreeMap<(Occupation, Occupation), S>) -> Self {
        let mut out = Self { modes, cutoff, entries };
        out.prune();
        out
    }

    pub(crate) fn raw_entries(&self) -> &BTreeMap<(Occupation, Occupation), S> {
        &self.entries
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::PSeries;

    #[test]
    fn duplicate_modes_rejected() {
        assert!(FockDensity::<f64>::zero(&["a", "a"], 2).is_err());
    }

    #[test]
    fn fidelity_of_orthogonal_states() {
        let zero = FockDensity::from_pure(&["a"], 2, &[(vec![0], 1.0)]).unwrap();
        assert_eq!(zero.fidelity(&[(vec![1], 1.0)]).unwrap(), 0.0);
        assert_eq!(zero.fidelity(&[(vec![0], 1.0)]).unwrap(), 1.0);
    }

    #[test]
    fn normalize_zero_constant_trace_fails() {
        let rho = FockDensity::from_entries(&["a"], 2, [(vec![1], vec![1], PSeries::var())]).unwrap();
        assert!(rho.normalize().is_err());
    }

    #[test]
    fn tensor_then_trace_recovers_factor() {
        let a = FockDensity::from_pure(&["a"], 2, &[(vec![0], 0.6), (vec![1], 0.8)]).unwrap();
        let b = FockDensity::from_pure(&["b"], 2, &[(vec![2], 1.0)]).unwrap();
        let ab = a.tensor(&b).unwrap();
        assert_eq!(ab.partial_trace(&["b"]).unwrap(), a);
    }

    #[test]
    fn reorder_swaps_occupations() {
        let a = FockDensity::from_pure(&["a", "b"], 2, &[(vec![1, 0], 1.0)]).unwrap();
        let r = a.reorder(&["b", "a"]).unwrap();
        assert_eq!(r.get(&[0, 1], &[0, 1]), 1.0);
    }
}
