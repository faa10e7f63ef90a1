//! Scene files, seeded scene generation, detection renders, benchmarks and
//! the classical-vs-separated oracle check behind the `quadray` binary.

pub mod bench;
pub mod check;
pub mod generate;
pub mod render;
pub mod rng;
pub mod scene;

use std::fmt;

/// Which discriminant route a command exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Method {
    Classical,
    Separated,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Classical => "classical",
            Method::Separated => "separated",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Runs `f` on a pool of `workers` threads, or on rayon's global pool when
/// `workers` is 0.
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    if workers == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool")
        .install(f)
}
