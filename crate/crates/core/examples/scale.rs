use plconvex::bench::{run_bench_with, BenchConfig};

fn main() {
    let cfg = BenchConfig { sizes: vec![100, 1000, 10000, 100000], ..BenchConfig::default() };
    let res = run_bench_with(&cfg, |r| println!("{}", r.csv()));
    println!("slope {}", res.slope);
}
