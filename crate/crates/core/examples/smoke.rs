use rmt_edge::ensembles::{mc_both_edges_inside, EnsembleSpec};
use rmt_edge::fredholm::counting_distribution;
use rmt_edge::kernels::gue_cd_kernel;
use rmt_edge::tailsums::gue_expected_tailsum;
use std::time::Instant;

fn main() {
    let rows: [(usize, f64, f64, f64, f64); 6] = [
        (10, 2.868e-2, 1.36e-6, 6.9e-14, 0.028681),
        (25, 2.955e-2, 1.70e-6, 1.4e-13, 0.029551),
        (50, 2.994e-2, 1.88e-6, 1.9e-13, 0.029944),
        (100, 3.019e-2, 2.00e-6, 2.3e-13, 0.030195),
        (250, 3.039e-2, 2.09e-6, 2.6e-13, 0.030392),
        (500, 3.048e-2, 2.14e-6, 2.8e-13, 0.030480),
    ];
    let t0 = Instant::now();
    for (n, p1, p2, p3, e_tn) in rows {
        let t = Instant::now();
        let k = gue_cd_kernel(n).unwrap();
        let edge = (2.0 * n as f64).sqrt();
        let d = counting_distribution(&k, edge, 3, 1e-9).unwrap();
        let e = gue_expected_tailsum(n, 0.0).unwrap();
        println!(
            "N={n:3}: p1 {:.4e} (ref {p1:.3e}, rel {:+.1e}) p2 {:.3e} (rel {:+.1e}) p3 {:.2e} (ratio {:.2}) E {:.6} (rel {:+.1e}) Ek {:.6} grid {} [{:?}]",
            d.prob(1), d.prob(1)/p1-1.0,
            d.prob(2), d.prob(2)/p2-1.0,
            d.prob(3), d.prob(3)/p3,
            e, e/e_tn-1.0, d.mean(), d.grid(), t.elapsed()
        );
        assert!((d.mean() - e).abs() < 1e-6, "route mismatch at N={n}");
    }
    println!("table total: {:?}", t0.elapsed());

    let t = Instant::now();
    let est = mc_both_edges_inside(&EnsembleSpec::Wishart { dim: 400, samples: 1600 }, 50_000, 2026).unwrap();
    println!("wishart both-edges: {:.4} +- {:.4} (ref 0.6921, dev {:+.4}) [{:?}]",
        est.mean, est.std_error, est.mean - 0.6921, t.elapsed());
    let t = Instant::now();
    let est = mc_both_edges_inside(&EnsembleSpec::Gue { dim: 400 }, 50_000, 2026).unwrap();
    println!("gue both-edges: {:.4} +- {:.4} (ref 0.9397, dev {:+.4}) [{:?}]",
        est.mean, est.std_error, est.mean - 0.9397, t.elapsed());
}
