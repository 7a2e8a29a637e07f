//! Few labeled examples leave several odd parities consistent.
use clonekit::teachlearn::{assignment_of, parity_lower_bound, LabeledExample};

fn main() -> clonekit::Result<()> {
    let prop: Vec<String> = (0..5).map(|i| format!("x{i}")).collect();
    let secret = 0b10101u64;
    let mut examples = Vec::new();
    for mask in [0b00011u64, 0b01100, 0b10001, 0b00110, 0b01010] {
        examples.push(LabeledExample::assignment(assignment_of(&prop, mask), (mask & secret).count_ones() % 2 == 1));
        let outcome = parity_lower_bound(&prop, &examples)?;
        println!("{} examples: {}", examples.len(), serde_json::to_string(&outcome).expect("serializable"));
    }
    Ok(())
}
