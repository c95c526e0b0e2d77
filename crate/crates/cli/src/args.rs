use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_SEED: u64 = 0x11_2019;

#[derive(Debug, Parser)]
#[command(
    name = "etacong",
    version,
    about = "Partition congruences modulo powers of 11 for p_[1^c 11^d](n)"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Theta,
    Delta,
    Alpha,
    All,
}

#[derive(Debug, Args)]
pub struct Triple {
    #[arg(long, allow_negative_numbers = true)]
    pub c: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub d: i64,
    #[arg(long)]
    pub r: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the congruence for (c, d, r).
    Statement(Triple),

    /// Check the congruence numerically for m = 0..=terms.
    Verify {
        #[command(flatten)]
        triple: Triple,
        #[arg(long, default_value_t = 30)]
        terms: u64,
        /// Work modulo 11^K (default: A_r + 6).
        #[arg(long)]
        k: Option<u32>,
    },

    /// Verify every (c, d, r) in a box.
    Scan {
        #[arg(long, allow_negative_numbers = true)]
        c_min: i64,
        #[arg(long, allow_negative_numbers = true)]
        c_max: i64,
        #[arg(long, allow_negative_numbers = true)]
        d_min: i64,
        #[arg(long, allow_negative_numbers = true)]
        d_max: i64,
        #[arg(long, default_value_t = 1)]
        r_min: u32,
        #[arg(long)]
        r_max: u32,
        #[arg(long, default_value_t = 30)]
        terms: u64,
        /// Fixed modulus exponent for every row (default: A_r + 6 per row).
        #[arg(long)]
        k: Option<u32>,
        /// Worker threads.
        #[arg(long, env = "ETACONG_JOBS")]
        jobs: Option<usize>,
    },

    /// Print the θ, δ and α tables; α is regenerated and diffed.
    Tables {
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
    },

    /// α(c, d), its table cell, and optionally the growth bound at r.
    Alpha {
        #[arg(long, allow_negative_numbers = true)]
        c: i64,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long)]
        r: Option<u32>,
    },

    /// List p_[1^c ell^d](n) for n < terms, computed naively.
    Oracle {
        #[arg(long, allow_negative_numbers = true)]
        c: i64,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long)]
        terms: usize,
        #[arg(long, default_value_t = 11)]
        ell: u64,
    },

    /// Structural self-checks (CI entry point).
    Selftest {
        #[arg(long, default_value_t = 100)]
        trials: u32,
    },
}
