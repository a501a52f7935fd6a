use std::sync::Arc;
use std::time::Instant;

use hilbseries::chern::catalan_check;
use hilbseries::SurfaceModel;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(7);
    let t = Instant::now();
    let models = vec![Arc::new(SurfaceModel::p2()), Arc::new(SurfaceModel::p1xp1())];
    let r = catalan_check(&models, n).unwrap();
    for row in &r.rows {
        println!("{} {} {:?}", row.n, row.expected, row.values.iter().map(|v| v.1.to_string()).collect::<Vec<_>>());
    }
    println!("pass={} in {:?}", r.pass(), t.elapsed());
}
