//! Builds the tree of a random VC-1 class and prints it as Graphviz.
//!
//! ```text
//! cargo run --example tree_structure -- [n] [seed] | dot -Tsvg > tree.svg
//! ```

use dp_vc1::harness::generate::random_tree;
use dp_vc1::io::tree_dot;
use dp_vc1::make_tree;

fn main() -> dp_vc1::Result<()> {
    let mut args = std::env::args().skip(1);
    let n = args.next().and_then(|s| s.parse().ok()).unwrap_or(12);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    let class = random_tree(n, 3, 0.6, seed)?.canonicalize()?;
    let f = class.concepts()[0].clone();
    let tree = make_tree(&class.f_represent(&f)?)?;

    eprintln!("{} concepts, depth {}, representative {:?}", class.len(), tree.max_depth(), f.id);
    for &x in tree.points() {
        let sub = tree.make_subtree(x.into());
        eprintln!("  subtree at {x}: {} nodes, leaves {:?}", sub.nodes.len(), sub.leaves);
    }
    print!("{}", tree_dot(&tree));
    Ok(())
}
