//! Q-learning relay selection on a fixed gain vector, checked against the
//! greedy choice and traced through training.

use irs_relay_sim::qselect::{build_reward_matrix, greedy_max_gain_relay, select_relay, train_observed, QLearnConfig};

fn main() -> irs_relay_sim::Result<()> {
    let gains = [0.8, 2.4, 1.1, 3.9, 3.7, 0.2];
    let rw = build_reward_matrix(&gains)?;
    println!("reward row of relay 0: {:?}", rw.row(0));

    let cfg = QLearnConfig { episodes: 2000, ..Default::default() };
    train_observed(&rw, &cfg, 400, |episode, q| {
        println!("episode {episode:5}: greedy pick relay {}", select_relay(q));
    })?;

    println!("max-gain relay: {}", greedy_max_gain_relay(&gains)?);
    Ok(())
}
