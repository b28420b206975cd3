//! The five-point kernel `c·x_{k,s} - x_{k+1,s} - x_{k,s+1} - x_{k-1,s} - x_{k,s-1}`
//! on row-major window arrays. Reads outside the source window are zero.
//!
//! This is the inner loop of the Laplacian, the power iteration and the
//! truncated resolvent solve; rows are independent and run through
//! [`Execution`].

use crate::cochain::Window;
use crate::exec::Execution;
use crate::C64;

/// Apply the kernel with center weight `center` to `src` (on `src_window`)
/// and write it on `out_window` into `out`.
pub fn apply_into(
    src: &[C64],
    src_window: Window,
    out: &mut [C64],
    out_window: Window,
    center: C64,
    exec: Execution,
) {
    assert_eq!(src.len(), src_window.len());
    assert_eq!(out.len(), out_window.len());
    if src_window == out_window {
        apply_same_window(src, out, src_window.side(), center, exec);
        return;
    }
    let out_side = out_window.side();
    let n_out = out_window.half_width() as i64;
    let n_src = src_window.half_width() as i64;
    let src_side = src_window.side() as i64;
    let read = |k: i64, s: i64| -> C64 {
        if k.abs() <= n_src && s.abs() <= n_src {
            src[((k + n_src) * src_side + s + n_src) as usize]
        } else {
            C64::new(0.0, 0.0)
        }
    };
    exec.fill_rows(out, out_side, |row, chunk| {
        let k = row as i64 - n_out;
        for (j, slot) in chunk.iter_mut().enumerate() {
            let s = j as i64 - n_out;
            *slot = center * read(k, s) - read(k + 1, s) - read(k, s + 1) - read(k - 1, s) - read(k, s - 1);
        }
    });
}

fn apply_same_window(src: &[C64], out: &mut [C64], side: usize, center: C64, exec: Execution) {
    exec.fill_rows(out, side, |row, chunk| {
        let base = row * side;
        let here = &src[base..base + side];
        let up = (row + 1 < side).then(|| &src[base + side..base + 2 * side]);
        let down = (row > 0).then(|| &src[base - side..base]);
        for j in 0..side {
            let mut acc = center * here[j];
            if let Some(r) = up {
                acc -= r[j];
            }
            if j + 1 < side {
                acc -= here[j + 1];
            }
            if let Some(r) = down {
                acc -= r[j];
            }
            if j > 0 {
                acc -= here[j - 1];
            }
            chunk[j] = acc;
        }
    });
}

/// Convenience wrapper returning a fresh array on `out_window`.
pub fn apply(src: &[C64], src_window: Window, out_window: Window, center: C64, exec: Execution) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); out_window.len()];
    apply_into(src, src_window, &mut out, out_window, center, exec);
    out
}
