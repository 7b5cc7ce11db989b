//! The packed prefix-sum tree on eight values: which entries exist, which a
//! query touches, and how the total size compares to the N(σ+1) bound.
//!
//! Run with: cargo run --example prefix_sums

use vla::prefix_tree::PrefixSumTree;

fn main() {
    let y = [5u64, 2, 2, 5, 1, 3, 7, 4];
    let sigma = 3;
    let tree = PrefixSumTree::build(&y, sigma).unwrap();

    println!("y = {y:?}, sigma = {sigma}");
    println!();
    for level in 1..=tree.num_levels() {
        let span = 1usize << (level - 1);
        print!(
            "level {level} (spans of {span}, {} bits each):",
            sigma as usize + level as usize - 1
        );
        let mut index = 1;
        while let Ok(sum) = tree.node(level, index) {
            print!("  [{index}] = {sum}");
            index += 2;
        }
        println!();
    }

    println!();
    for j in [5usize, 7, 8] {
        let (sum, touched) = tree.prefix_sum_traced(j).unwrap();
        let parts: Vec<String> = touched
            .iter()
            .map(|t| format!("level {} entry {}", t.level, t.index))
            .collect();
        println!("prefix_sum({j}) = {sum} via {}", parts.join(" + "));
    }

    println!();
    println!(
        "memory: {} bits <= N(sigma+1) = {} bits",
        tree.memory_bits(),
        y.len() * (sigma as usize + 1),
    );
}
