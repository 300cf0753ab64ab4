use dp_vc1::harness::generate::{example_class, modified_example_class, points, random_tree, thresholds};
use dp_vc1::make_tree;
use dp_vc1::oracle::dimension_report;

fn main() -> dp_vc1::Result<()> {
    let classes = [
        example_class(),
        modified_example_class(),
        thresholds(10)?,
        points(10)?,
        random_tree(12, 2, 0.5, 3)?,
    ];
    println!("{:<24} {:>3} {:>5} {:>3} {:>6}", "class", "vc", "ldim", "td", "depth");
    for class in &classes {
        let r = dimension_report(class)?;
        let canon = class.canonicalize()?;
        let depth = make_tree(&canon.f_represent(&canon.concepts()[0].clone())?)?.max_depth();
        println!("{:<24} {:>3} {:>5} {:>3} {:>6}", class.name(), r.vc, r.littlestone, r.thresholds, depth);
    }
    Ok(())
}
