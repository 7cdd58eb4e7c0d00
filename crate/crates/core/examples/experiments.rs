//! Small versions of the three experiments, printed as tables.

use hypcolor::harness::{
    experiment_claim_failure_prob, experiment_epoch_shrinkage, experiment_success_rate, ExperimentParams, Family,
    GeneratorSpec, InstanceSource, OutputFormat, SuccessCriteria,
};

fn main() {
    let source = InstanceSource::Generate(GeneratorSpec::new(Family::UniformRandom, 32, 12, 0));
    let params = ExperimentParams::new(0.125, 3, 99);
    let success = experiment_success_rate(&source, &params, 50, SuccessCriteria::default()).unwrap();
    println!("{}", success.render(OutputFormat::Table));

    let dense = InstanceSource::Generate(GeneratorSpec::new(Family::UniformRandom, 48, 8, 0));
    let claim = experiment_claim_failure_prob(&dense, &ExperimentParams::new(0.25, 3, 99), 100, 3, 0.9).unwrap();
    println!("{}", claim.render(OutputFormat::Table));

    let shrink = experiment_epoch_shrinkage(&source, &params, 50, 0.95).unwrap();
    println!("{}", shrink.render(OutputFormat::Csv).lines().take(4).collect::<Vec<_>>().join("\n"));
}
