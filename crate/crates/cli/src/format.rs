//! Command-line scalars and fixed-precision number output.

use lattice_dec::C64;

/// Parse `"re,im"` or a bare real `"re"`.
pub fn parse_complex(text: &str) -> Result<C64, String> {
    let parse = |part: &str| -> Result<f64, String> {
        let value: f64 = part.trim().parse().map_err(|_| format!("`{part}` is not a number"))?;
        if value.is_finite() {
            Ok(value)
        } else {
            Err(format!("`{part}` is not finite"))
        }
    };
    match text.split_once(',') {
        Some((re, im)) => Ok(C64::new(parse(re)?, parse(im)?)),
        None => Ok(C64::new(parse(text)?, 0.0)),
    }
}

/// `x` with 17 significant digits, positional when the exponent is moderate.
pub fn sig17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let scientific = format!("{x:.16e}");
    let exp: i32 = scientific.rsplit_once('e').and_then(|(_, e)| e.parse().ok()).unwrap_or(0);
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        format!("{x:.decimals$}")
    } else {
        scientific
    }
}

/// `re` for a real value, `re,im` otherwise.
pub fn complex17(z: C64) -> String {
    if z.im == 0.0 {
        sig17(z.re)
    } else {
        format!("{},{}", sig17(z.re), sig17(z.im))
    }
}
