use planar::graph_enum::connected_graphs_up_to;
use planar::potential::check_graph;

fn main() {
    let bound: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let t = std::time::Instant::now();
    let mut dirty = 0usize;
    let mut s3max = 0u32;
    for g in connected_graphs_up_to(bound) {
        let rep = check_graph(&g, 9).unwrap();
        if !rep.pair_failures.is_empty() {
            println!("FAIL {:?}", g);
            for f in rep.pair_failures.iter().take(5) {
                println!("   {}", f);
            }
            std::process::exit(1);
        }
        dirty += rep.dirty_failures;
        if let Some(d) = rep.s3_max_dist {
            s3max = s3max.max(d);
        }
    }
    println!("all clean; dirty_failures={} s3_max={} in {:?}", dirty, s3max, t.elapsed());
}
