use super::{PhaseTrace, RunResult};

/// Largest 2,3-skeleton among biased active edges at each epoch boundary.
///
/// Entry 0 is taken over every biased edge of phase 1. Entry `t` is the
/// largest skeleton among the components still active after the last phase
/// of epoch `t`, or 0 once nothing is active. The series stops at the first
/// 0 after entry 0.
pub fn epoch_skeleton_series(result: &RunResult, beta: usize) -> Vec<usize> {
    series_from_traces(&result.traces, beta)
}

pub(crate) fn series_from_traces(traces: &[PhaseTrace], beta: usize) -> Vec<usize> {
    let mut series = vec![traces.first().map_or(0, |t| t.max_skeleton)];
    if traces.is_empty() || beta == 0 {
        return series;
    }
    let epochs = traces.len().div_ceil(beta);
    for t in 1..=epochs {
        let last = (t * beta).min(traces.len());
        let k = traces[last - 1].carried_max_skeleton;
        series.push(k);
        if k == 0 {
            break;
        }
    }
    series
}
