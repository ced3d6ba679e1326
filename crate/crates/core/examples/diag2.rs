use nalgebra::DMatrix;

fn boost(dim: usize, p: usize, q: usize, t: f64) -> DMatrix<f64> {
    let mut m = DMatrix::identity(dim, dim);
    m[(p, p)] = t.cosh(); m[(q, q)] = t.cosh();
    m[(p, q)] = t.sinh(); m[(q, p)] = t.sinh();
    m
}

// enumerate cyclically reduced words up to len, return min gap over words
fn min_trace(a: &DMatrix<f64>, b: &DMatrix<f64>, max_len: usize) -> (f64, String) {
    let ainv = a.clone().try_inverse().unwrap();
    let binv = b.clone().try_inverse().unwrap();
    let gens = [a.clone(), ainv, b.clone(), binv];
    let names = ["a", "A", "b", "B"];
    let inv_of = [1usize, 0, 3, 2];
    let mut best = f64::INFINITY;
    let mut best_word = String::new();
    // DFS over cyclically reduced words
    fn rec(gens: &[DMatrix<f64>; 4], names: &[&str; 4], inv_of: &[usize; 4],
           word: &mut Vec<usize>, max_len: usize, best: &mut f64, best_word: &mut String) {
        let first = word[0]; let last = *word.last().unwrap();
        if inv_of[first] != last {
            let mut m = gens[word[0]].clone();
            for &l in &word[1..] { m = m * &gens[l]; }
            let tr = m.trace();
            if tr < *best {
                *best = tr;
                *best_word = word.iter().map(|&l| names[l]).collect::<Vec<_>>().join("");
            }
        }
        if word.len() == max_len { return; }
        for next in 0..4 {
            if inv_of[next] == *word.last().unwrap() { continue; }
            word.push(next);
            rec(gens, names, inv_of, word, max_len, best, best_word);
            word.pop();
        }
    }
    for first in 0..4 {
        let mut w = vec![first];
        rec(&gens, &names, &inv_of, &mut w, max_len, &mut best, &mut best_word);
    }
    (best, best_word)
}

fn main() {
    let dim = 3;
    println!("pure pants probe: a = B'(th) at foot -D/2, b = B'(s*th) at foot +D/2");
    for &theta in &[0.6, 0.7, 0.8, 0.9, 1.0, 1.1] {
        for &d in &[0.8, 1.2, 1.6, 2.0, 2.4] {
            for &sense in &[1.0f64, -1.0] {
                let bp = |t: f64| boost(dim, 0, 2, t);   // core: plane (e0,e2)
                let p = |s: f64| boost(dim, 0, 1, s);     // common geodesic translation
                let a = p(-d / 2.0) * bp(theta) * p(d / 2.0);
                let b = p(d / 2.0) * bp(sense * theta) * p(-d / 2.0);
                let (mt, w) = min_trace(&a, &b, 6);
                let status = if mt > 3.0 { "HYP" } else { "BAD" };
                if true {
                    println!("theta {theta:.2} D {d:.1} sense {sense:+.0}: min trace {mt:.4} [{w}] {status}");
                }
            }
        }
    }
}
