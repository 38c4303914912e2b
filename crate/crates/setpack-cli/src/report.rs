//! Per-instance run reports for the bench command.

/// What one solver run looked like: instance stats, wall time, the largest DP
/// cell encountered, and the outcome. Bench prints a fixed subset as TSV.
pub struct RunReport {
    pub algorithm: &'static str,
    pub q: usize,
    pub p: usize,
    pub members: usize,
    pub universe: usize,
    pub millis: u128,
    pub peak_cell: usize,
    /// Optimum weight, or `None` for REJECT.
    pub result: Option<i64>,
}

impl RunReport {
    pub fn tsv_row(&self, name: &str) -> String {
        let result = match self.result {
            Some(w) => w.to_string(),
            None => "REJECT".to_string(),
        };
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            name, self.algorithm, self.q, self.p, self.members, self.millis, result
        )
    }

    pub const TSV_HEADER: &'static str = "name\talg\tq\tp\tm\tmillis\tresult";
}
