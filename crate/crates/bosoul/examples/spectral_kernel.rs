//! Eigenbasis construction, the graph Fourier transform, and the kernel on
//! candidate source sets, including the on-disk basis cache.

use bosoul::graph::{Graph, NodeSet};
use bosoul::spectral::{
    build_basis, fourier_transform, gsg_kernel, gsg_kernel_via_gft, load_basis, save_basis,
};

fn main() -> bosoul::Result<()> {
    let g = Graph::small_world(200, 6, 0.15, 3)?;
    let basis = build_basis(&g)?;
    println!(
        "eigenvalues: min {:.4}, max {:.4}",
        basis.eigenvalues()[0],
        basis.eigenvalues()[g.n_nodes() - 1]
    );

    let x = NodeSet::new(vec![5, 40, 110]).indicator(g.n_nodes());
    let y = NodeSet::new(vec![6, 41, 111]).indicator(g.n_nodes());
    let signal = fourier_transform(&basis, &x, None)?;
    println!("signal norm {:.6} (equals sqrt of set size)", signal.norm());

    for l in [0.5, 1.0, 5.0] {
        let fast = gsg_kernel(&x, &y, l)?;
        let explicit = gsg_kernel_via_gft(&basis, &x, &y, l)?;
        println!("l = {l}: kernel {fast:.6}, explicit path {explicit:.6}");
    }

    let dir = std::env::temp_dir().join("bosoul-example-cache");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("basis.bin");
    save_basis(&path, &basis)?;
    let cached = load_basis(&path, basis.fingerprint())?;
    println!("cache round-trip ok: {} x {} operator", cached.n(), cached.n());
    Ok(())
}
