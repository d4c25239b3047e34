/// Four significant digits, fixed notation in `[1e-3, 1e6)` and scientific outside.
pub fn sig4(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-3..6).contains(&mag) {
        let decimals = (3 - mag).max(0) as usize;
        let s = format!("{x:.decimals$}");
        // rounding can carry into a new digit, e.g. 9.9996 -> 10.000
        let again = s.parse::<f64>().unwrap_or(x).abs().log10().floor() as i32;
        if again != mag {
            let decimals = (3 - again).max(0) as usize;
            return format!("{x:.decimals$}");
        }
        s
    } else {
        format!("{x:.3e}")
    }
}

/// Inclusive grid `lo, lo + step, …, hi`, free of accumulated rounding.
pub fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=count)
        .map(|i| {
            let v = lo + step * i as f64;
            (v * 1e9).round() / 1e9
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_significant_digits() {
        assert_eq!(sig4(358.6728), "358.7");
        assert_eq!(sig4(0.0123456), "0.01235");
        assert_eq!(sig4(1.0), "1.000");
        assert_eq!(sig4(9.99996), "10.00");
        assert_eq!(sig4(1e10), "1.000e10");
        assert_eq!(sig4(3.4e-4), "3.400e-4");
    }

    #[test]
    fn grid_hits_both_ends() {
        assert_eq!(grid(0.8, 1.0, 0.01).len(), 21);
        assert_eq!(*grid(0.8, 1.0, 0.01).last().unwrap(), 1.0);
        assert_eq!(grid(100.0, 200.0, 50.0), vec![100.0, 150.0, 200.0]);
    }
}
