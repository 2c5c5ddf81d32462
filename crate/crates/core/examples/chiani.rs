use rmt_edge::ensembles::{mc_both_edges_inside, EnsembleSpec};
fn main() {
    for (n, s, seeds) in [(400usize, 1600usize, 4u64), (800, 3200, 2)] {
        for seed in 0..seeds {
            let est = mc_both_edges_inside(&EnsembleSpec::Wishart { dim: n, samples: s }, 400_000, seed).unwrap();
            println!("N={n} seed={seed}: {:.5} +- {:.5} (dev {:+.5})", est.mean, est.std_error, est.mean - 0.6921);
        }
    }
}
