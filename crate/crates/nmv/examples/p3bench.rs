use std::time::Instant;
fn main() {
    let ideals: Vec<Vec<Vec<u16>>> = vec![
        vec![vec![1,0,0,0], vec![0,1,0,0], vec![0,0,1,0], vec![0,0,0,1]],
        vec![vec![1,2,0,0], vec![1,0,0,2], vec![0,1,1,1], vec![0,0,2,1]],
    ];
    let spec = nmv::engine::spec_from_exponents(4, &ideals).unwrap();
    let t0 = Instant::now();
    let sat = nmv::oracle::saturated_fiber_table(&spec, None).unwrap();
    println!("saturated table in {:?}:", t0.elapsed());
    for (d, v) in sat.table.iter_ordered() { println!("  {:?} -> {}", d, v); }
    let t1 = Instant::now();
    let unsat = nmv::oracle::special_fiber_table(&spec, None).unwrap();
    println!("special fiber in {:?}:", t1.elapsed());
    for (d, v) in unsat.table.iter_ordered() { println!("  {:?} -> {}", d, v); }
    let t2 = Instant::now();
    let graph = nmv::engine::graph_multidegrees(&spec, None).unwrap();
    println!("graph table in {:?} (slice matches: {}):", t2.elapsed(), graph.slice_matches_saturated);
    for (d, v) in &graph.entries { println!("  {:?} -> {}", d, v); }
}
