use gfcert_core::search::*;
fn main() {
    for seed in [1u64, 7, 42] {
        let t0 = std::time::Instant::now();
        let cfg = SearchConfig::new(5, 3000, seed);
        let res = search_growth(&cfg);
        println!("n=5 seed {seed}: growth {:.12} viol {:.2e} restart {} in {:?}", res.growth, res.violation, res.restart_index, t0.elapsed());
    }
}
