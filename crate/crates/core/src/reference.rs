//! Slow evaluators that follow the set definitions literally.
//!
//! These exist to cross-check the fast paths; they are quadratic or worse
//! and intended for words of a few dozen letters.

use crate::word::{in_pow_factor, is_palindrome, mirror, Word};

/// Every pair `(i, j)` satisfying the run clauses, with the right extension
/// letter inside `w`. `O(n^3 |u|)`.
pub fn run_border_brute(w: &Word, u: &Word, gamma: usize) -> Vec<(usize, usize)> {
    let n = w.len();
    let p = u.len();
    let u = u.letters();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            if j - i + 1 < (gamma - 2) * p || p + 1 >= i || j + p + 1 > n {
                continue;
            }
            if !in_pow_factor(w.slice(i - p, j + p), u) {
                continue;
            }
            if in_pow_factor(w.slice(i - p, j + p + 1), u) {
                continue;
            }
            if in_pow_factor(w.slice(i - p - 1, j + p), u) {
                continue;
            }
            out.push((i, j));
        }
    }
    out
}

/// `dom[p]` for `p` in `1..=|w|`; index 0 is unused.
pub fn rpo_dom_brute(w: &Word, runs: &[(usize, usize)]) -> Vec<bool> {
    let mut dom = vec![true; w.len() + 1];
    dom[0] = false;
    for p in 1..=w.len() {
        dom[p] = !runs.iter().any(|&(i, j)| i <= p && p <= j);
    }
    dom
}

fn in_dom(dom: &[bool], p: usize) -> bool {
    p >= 1 && p < dom.len() && dom[p]
}

/// Membership of `(i, j)` in the standard-palindrome set, clause by clause.
pub fn std_pal_brute(w: &Word, dom: &[bool], u_len: usize, i: usize, j: usize) -> bool {
    if i < 2 || j + 1 > w.len() || i > j {
        return false;
    }
    if !in_dom(dom, i) || !in_dom(dom, j) {
        return false;
    }
    if !is_palindrome(w.slice(i - 1, j + 1)) {
        return false;
    }
    if !(i - 1..=(i + u_len - 1).min(j)).all(|p| in_dom(dom, p)) {
        return false;
    }
    if !((j + 1).saturating_sub(u_len).max(i)..=j + 1).all(|p| in_dom(dom, p)) {
        return false;
    }
    (i..=j).all(|m| in_dom(dom, m) == in_dom(dom, mirror(i, m, j).expect("m in range")))
}

/// Number of listed runs `(a, b)` with `i <= a` and `b <= j`.
pub fn runs_inside(runs: &[(usize, usize)], i: usize, j: usize) -> usize {
    runs.iter().filter(|&&(a, b)| i <= a && b <= j).count()
}
