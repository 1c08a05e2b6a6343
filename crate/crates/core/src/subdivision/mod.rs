//! Richness ideals and the weakly rich subdivision of the orthant.

mod choice;
mod ideal;
mod staircase;

pub use choice::{
    choice_cone, choice_fan, choice_monoid, cut_order_from_choice, factors_through, smoothness_report, weakly_rich_fan,
    ChoiceEntry, ChoiceFunction, CutOrder, SmoothnessReport,
};
pub use ideal::{richness_ideal, MonomialIdeal};
