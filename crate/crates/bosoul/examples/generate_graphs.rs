//! Build the two synthetic graph families and print their basic statistics.

use bosoul::graph::{connected_components, Graph};

fn describe(name: &str, g: &Graph) {
    println!(
        "{name}: {} nodes, {} edges, average degree {:.2}, {} component(s)",
        g.n_nodes(),
        g.n_edges(),
        g.average_degree(),
        connected_components(g).len()
    );
}

fn main() -> bosoul::Result<()> {
    let sw = Graph::small_world(1000, 10, 0.1, 42)?;
    describe("small world", &sw);

    let er = Graph::erdos_renyi(1000, 0.01, 42)?;
    describe("erdos-renyi", &er);

    // Edge lists round-trip through the plain two-column text format.
    let text = sw.to_edge_list_string();
    let reloaded = bosoul::graph::parse_edge_list(&text)?;
    assert_eq!(reloaded.graph.n_edges(), sw.n_edges());
    println!("edge list round-trip: {} lines", text.lines().count());
    Ok(())
}
