use margulis::families::{build_family_with_geometry, FamilyGeometry, FamilyKind, SeededFamily};
use margulis::spectrum::{build_table, properness_scan, Properness};
use margulis::affine::proximality_scan;

fn probe(spec: &SeededFamily, geo: &FamilyGeometry, max_len: usize, verbose: bool) -> Option<(usize, f64, f64, f64)> {
    let rep = match build_family_with_geometry(spec, geo) {
        Ok(r) => r,
        Err(e) => { if verbose { println!("  build fail: {e}"); } return None; }
    };
    let table = match build_table(&rep, max_len, margulis::words::ClassMode::All) {
        Ok(t) => t,
        Err(e) => { if verbose { println!("  table fail: {e}"); } return None; }
    };
    let scan = properness_scan(&table).ok()?;
    let prox = proximality_scan(&rep, max_len.min(6)).ok()?;
    let ok = table.skipped == 0 && scan.verdict == Properness::PositiveUniform;
    if verbose || !ok {
        println!(
            "  n={} s={:.2} sep={:.2} alt={} seed={}: skipped {} verdict {:?} margins [{:.4},{:.4}] min_gap {:.4}",
            spec.n, spec.strength, geo.separation, geo.alternate_sense, spec.seed,
            table.skipped, scan.verdict, scan.margin_low, scan.margin_high, prox.min_gap
        );
    }
    Some((table.skipped, scan.margin_low, prox.min_gap, scan.max_alpha))
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let max_len: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    println!("== grid search n=1 rank=2, max_len {max_len} ==");
    for &strength in &[1.8, 2.0, 2.2, 2.5] {
        for &sep in &[0.5, 0.7, 0.9, 1.1, 1.4] {
            for &alt in &[true, false] {
                let mut worst_skip = 0usize;
                let mut worst_margin = f64::INFINITY;
                let mut worst_gap = f64::INFINITY;
                let mut all_ok = true;
                for seed in [7u64, 1, 2, 3, 4] {
                    let spec = SeededFamily { strength, seed, ..SeededFamily::default() };
                    let geo = FamilyGeometry { separation: sep, alternate_sense: alt, tilt: 0.12 };
                    match probe(&spec, &geo, max_len, false) {
                        Some((sk, m, g, _)) => {
                            worst_skip = worst_skip.max(sk);
                            worst_margin = worst_margin.min(m);
                            worst_gap = worst_gap.min(g);
                            if sk > 0 || m <= 0.0 { all_ok = false; }
                        }
                        None => { all_ok = false; }
                    }
                }
                if all_ok {
                    println!("GOOD s={strength} sep={sep} alt={alt}: min margin {worst_margin:.4} min gap {worst_gap:.4}");
                }
            }
        }
    }
    println!("== ams n=3 rank=2, max_len 5 ==");
    for &strength in &[1.8, 2.0, 2.2] {
        for &sep in &[0.5, 0.7, 0.9] {
            for &alt in &[true, false] {
                let spec = SeededFamily { family: FamilyKind::AmsOddN, n: 3, strength, seed: 5, ..SeededFamily::default() };
                let geo = FamilyGeometry { separation: sep, alternate_sense: alt, tilt: 0.12 };
                if let Some((sk, m, g, _)) = probe(&spec, &geo, 5, false) {
                    if sk == 0 && m > 0.0 {
                        println!("GOOD-AMS s={strength} sep={sep} alt={alt}: margin {m:.4} gap {g:.4}");
                    }
                }
            }
        }
    }
}
