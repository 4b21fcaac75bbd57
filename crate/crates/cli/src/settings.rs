//! Per-command settings: a TOML file provides the base values and any flag
//! given on the command line replaces the corresponding entry.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

/// Angle-valued inputs that `--pi-units` rescales.
pub trait Angle {
    fn in_pi_units(self, factor: f64) -> Self;
}

impl Angle for f64 {
    fn in_pi_units(self, factor: f64) -> Self {
        self * factor
    }
}

impl Angle for Vec<f64> {
    fn in_pi_units(self, factor: f64) -> Self {
        self.into_iter().map(|a| a * factor).collect()
    }
}

macro_rules! convert {
    (angle, $v:expr, $f:expr) => {
        Angle::in_pi_units($v, $f)
    };
    (value, $v:expr, $f:expr) => {
        $v
    };
}

macro_rules! settings {
    (
        $(#[$doc:meta])*
        $args:ident => $settings:ident {
            $( $field:ident : $arg_ty:ty => $ty:ty = $default:expr, $kind:ident, $help:literal; )*
        }
    ) => {
        #[derive(clap::Args, Debug, Clone, Default)]
        pub struct $args {
            $(
                #[arg(long, help = $help, allow_hyphen_values = true, value_delimiter = ',')]
                pub $field: Option<$arg_ty>,
            )*
        }

        $(#[$doc])*
        #[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
        #[serde(default, deny_unknown_fields)]
        pub struct $settings {
            $(
                #[serde(skip_serializing_if = "crate::settings::Absent::is_absent")]
                pub $field: $ty,
            )*
        }

        impl Default for $settings {
            fn default() -> Self {
                Self { $( $field: $default, )* }
            }
        }

        impl $args {
            /// Overrides `base` with every flag that was given. Angle flags are
            /// multiplied by `angle_unit` (π under `--pi-units`).
            pub fn apply(&self, base: &mut $settings, angle_unit: f64) {
                $(
                    if let Some(v) = &self.$field {
                        base.$field = convert!($kind, v.clone(), angle_unit).into();
                    }
                )*
            }
        }
    };
}

/// Lets optional settings disappear from serialized configs.
pub trait Absent {
    fn is_absent(&self) -> bool;
}

impl<T> Absent for Option<T> {
    fn is_absent(&self) -> bool {
        self.is_none()
    }
}

macro_rules! never_absent {
    ($($t:ty),*) => { $( impl Absent for $t { fn is_absent(&self) -> bool { false } } )* };
}
never_absent!(f64, usize, u64, i64, bool, Vec<f64>, SimScenario, SpectrumScenario, Parity, Initial);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SimScenario {
    Interface,
    Homogeneous,
    Defect,
    Wire,
    CycleTwoSegment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumScenario {
    CycleTwoSegment,
    Defect,
    Wire,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Initial {
    /// `Ψ_L` of the clean wire.
    PsiL,
    /// `|x_min + 1⟩ ⊗ (1, 0)`.
    EdgeSite,
}

settings! {
    /// Time evolution of a single scenario.
    SimulateArgs => SimulateSettings {
        scenario: SimScenario => SimScenario = SimScenario::Interface, value, "Coin layout";
        steps: usize => usize = 150, value, "Number of steps";
        size: usize => Option<usize> = None, value, "Number of sites (wire and cycle; lines are sized automatically)";
        theta: f64 => f64 = FRAC_PI_4, angle, "Bulk theta (homogeneous, defect, wire, cycle segment B)";
        theta_minus: f64 => f64 = -FRAC_PI_4, angle, "Theta for x < 0 (interface)";
        theta_plus: f64 => f64 = FRAC_PI_4, angle, "Theta for x >= 0 (interface)";
        theta_a: f64 => f64 = PI / 3.0, angle, "Defect theta or segment A theta";
        segment: usize => usize = 21, value, "Sites in segment A (cycle)";
        left_end: f64 => f64 = FRAC_PI_2, angle, "Theta of the left reflecting coin (wire)";
        right_end: f64 => f64 = FRAC_PI_2, angle, "Theta of the right reflecting coin (wire)";
        delta: f64 => f64 = 0.0, angle, "Coin phase delta";
        zeta: f64 => f64 = 0.0, angle, "Coin phase zeta";
        sigma: f64 => f64 = 0.0, angle, "Coin phase sigma";
        initial_site: i64 => Option<i64> = None, value, "Starting coordinate (default 0, or x_min+1 on a wire)";
        initial_coin: Vec<f64> => Option<Vec<f64>> = None, value, "Starting coin as re_a,im_a,re_b,im_b";
        window_radius: i64 => Option<i64> = None, value, "Central window half-width (interface; default 3 xi)";
        snapshot_every: usize => Option<usize> = None, value, "Also write full amplitudes every N steps";
    }
}

settings! {
    /// Quasienergy spectra, either a theta_A sweep or a single wire.
    SpectrumArgs => SpectrumSettings {
        scenario: SpectrumScenario => SpectrumScenario = SpectrumScenario::CycleTwoSegment, value, "Coin layout";
        size: usize => usize = 42, value, "Number of sites";
        segment: usize => usize = 21, value, "Sites in segment A (cycle)";
        theta: f64 => f64 = FRAC_PI_4, angle, "Bulk theta (theta_B, or the wire bulk)";
        end_theta: f64 => f64 = -FRAC_PI_2, angle, "Reflecting end theta (wire)";
        delta: f64 => f64 = -FRAC_PI_2, angle, "Coin phase delta";
        zeta: f64 => f64 = -FRAC_PI_2, angle, "Coin phase zeta";
        sigma: f64 => f64 = 0.0, angle, "Coin phase sigma";
        theta_a_min: f64 => f64 = -FRAC_PI_2, angle, "First theta_A of the sweep";
        theta_a_max: f64 => f64 = FRAC_PI_2, angle, "Last theta_A of the sweep";
        theta_a_points: usize => usize = 100, value, "Number of theta_A values";
    }
}

settings! {
    /// Rabi transport between the ends of a clean wire.
    RabiArgs => RabiSettings {
        size: usize => usize = 21, value, "Number of sites";
        theta: f64 => f64 = PI / 10.0, angle, "Bulk theta";
        end_theta: f64 => f64 = -FRAC_PI_2, angle, "Reflecting end theta";
        delta: f64 => f64 = 0.0, angle, "Coin phase delta";
        zeta: f64 => f64 = 0.0, angle, "Coin phase zeta";
        sigma: f64 => f64 = 0.0, angle, "Coin phase sigma";
        steps: usize => Option<usize> = None, value, "Number of steps (default 1.25 periods)";
        window: f64 => f64 = 0.3, value, "Half-width of the quasienergy window around delta";
        ipr_threshold: f64 => Option<f64> = None, value, "IPR threshold for gap states (default 2/D)";
    }
}

settings! {
    /// Exact, approximate and diagonalized gap energies over a theta x L grid.
    GapScalingArgs => GapScalingSettings {
        thetas: Vec<f64> => Vec<f64> = vec![PI / 20.0, PI / 6.0, PI / 4.0, PI / 3.0, 2.0 * PI / 5.0], angle, "Bulk thetas";
        l_min: usize => usize = 4, value, "Smallest half-length L";
        l_max: usize => usize = 14, value, "Largest half-length L";
        parity: Parity => Parity = Parity::Odd, value, "Wire parity (odd D = 2L+3, even D = 2L+2)";
        diagonalize: bool => bool = true, value, "Also diagonalize each wire";
    }
}

settings! {
    /// Analytic wire spectrum against diagonalization.
    AnalyticCheckArgs => AnalyticCheckSettings {
        size: usize => usize = 21, value, "Number of sites";
        theta: f64 => f64 = PI / 10.0, angle, "Bulk theta";
        delta: f64 => f64 = 0.0, angle, "Coin phase delta";
        zeta: f64 => f64 = 0.0, angle, "Coin phase zeta";
        sigma: f64 => f64 = 0.0, angle, "Coin phase sigma";
        tolerance: f64 => f64 = 1e-9, value, "Largest accepted deviation or residual";
    }
}

settings! {
    /// Rabi transport on wires with random bulk coins.
    DisorderArgs => DisorderSettings {
        size: usize => usize = 21, value, "Number of sites";
        theta_min: f64 => f64 = 0.0, angle, "Lower end of the bulk theta interval";
        theta_max: f64 => f64 = PI / 5.0, angle, "Upper end of the bulk theta interval";
        end_theta: f64 => f64 = -FRAC_PI_2, angle, "Reflecting end theta";
        clean_theta: f64 => f64 = PI / 10.0, angle, "Bulk theta of the clean wire defining psi-l";
        initial: Initial => Initial = Initial::PsiL, value, "Initial state";
        seed: u64 => u64 = 0, value, "Seed of the first realization";
        realizations: usize => usize = 50, value, "Number of realizations";
        steps: usize => Option<usize> = None, value, "Number of steps (default 1.25 periods per realization)";
        window: f64 => f64 = 0.3, value, "Half-width of the quasienergy window around 0";
        trace_seed: u64 => Option<u64> = None, value, "Seed whose p_L, p_R and trajectory are written (default: first)";
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file_values() {
        let mut s: RabiSettings = toml::from_str("size = 31\ntheta = 0.5\n").unwrap();
        let args = RabiArgs { theta: Some(0.25), ..RabiArgs::default() };
        args.apply(&mut s, 1.0);
        assert_eq!(s.size, 31);
        assert_eq!(s.theta, 0.25);
        assert_eq!(s.end_theta, -FRAC_PI_2);
    }

    #[test]
    fn pi_units_scale_angles_only() {
        let mut s = RabiSettings::default();
        let args = RabiArgs { theta: Some(0.1), size: Some(11), ..RabiArgs::default() };
        args.apply(&mut s, PI);
        assert_eq!(s.theta, 0.1 * PI);
        assert_eq!(s.size, 11);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<RabiSettings>("sise = 3\n").is_err());
    }

    #[test]
    fn dumped_settings_round_trip() {
        let s = GapScalingSettings { parity: Parity::Even, ..GapScalingSettings::default() };
        let text = toml::to_string(&s).unwrap();
        assert_eq!(toml::from_str::<GapScalingSettings>(&text).unwrap(), s);
        let r = RabiSettings::default();
        let text = toml::to_string(&r).unwrap();
        assert!(!text.contains("steps"));
        assert_eq!(toml::from_str::<RabiSettings>(&text).unwrap(), r);
    }
}
