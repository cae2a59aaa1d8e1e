//! Markov-chain sampling of the 2D Ising Boltzmann distribution at coupling
//! beta (weight e^{-beta E}, E = -sum over links of S_u S_v).
//!
//! Three update schemes: local Metropolis, Wolff single-cluster, and a mixed
//! compound sweep (one Wolff step followed by one Metropolis sweep). Cluster
//! updates keep autocorrelation times short near the critical coupling;
//! Metropolis guarantees local ergodic mixing at extreme beta.
//!
//! Every chain owns a `ChaCha8Rng` seeded from a 64-bit value, so a
//! (seed, config) pair fixes the full trajectory bit for bit regardless of
//! how many chains run concurrently.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::TorusGeometry;
use crate::scalar::Scalar;

/// Update scheme for one compound sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Algorithm {
    Metropolis,
    Wolff,
    Mixed,
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "metropolis" => Ok(Self::Metropolis),
            "wolff" => Ok(Self::Wolff),
            "mixed" => Ok(Self::Mixed),
            other => Err(format!(
                "unknown algorithm '{other}' (expected metropolis|wolff|mixed)"
            )),
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Metropolis => "metropolis",
            Self::Wolff => "wolff",
            Self::Mixed => "mixed",
        })
    }
}

/// Schedule and identity of one Markov chain.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct ChainConfig {
    pub l: usize,
    pub beta: f64,
    pub seed: u64,
    /// Thermalization compound sweeps before the first measurement.
    pub n_therm: u64,
    /// Number of measurements.
    pub n_measure: u64,
    /// Compound sweeps between consecutive measurements.
    pub measure_interval: u64,
    pub algorithm: Algorithm,
}

impl ChainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.l < 2 {
            return Err(Error::InvalidSize(self.l));
        }
        if self.n_measure < 1 {
            return Err(Error::TooFew {
                what: "measurements",
                need: 1,
                got: self.n_measure as usize,
            });
        }
        if self.measure_interval < 1 {
            return Err(Error::TooFew {
                what: "sweeps per measurement interval",
                need: 1,
                got: self.measure_interval as usize,
            });
        }
        if !(self.beta >= 0.0 && self.beta.is_finite()) {
            return Err(Error::BadGrid);
        }
        Ok(())
    }
}

/// ±1 spin state of one chain with its cached total energy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinConfiguration {
    spins: Vec<i8>,
    energy: i64,
}

impl SpinConfiguration {
    pub fn all_up(geom: &TorusGeometry) -> Self {
        Self {
            spins: vec![1; geom.n_spins()],
            energy: -(geom.n_links() as i64),
        }
    }

    pub fn random<R: Rng>(geom: &TorusGeometry, rng: &mut R) -> Self {
        let spins: Vec<i8> = (0..geom.n_spins())
            .map(|_| if rng.random::<bool>() { 1 } else { -1 })
            .collect();
        let mut state = Self { spins, energy: 0 };
        state.energy = state.recompute_energy(geom);
        state
    }

    #[inline]
    pub fn spins(&self) -> &[i8] {
        &self.spins
    }

    #[inline]
    pub fn spin(&self, vertex: usize) -> i8 {
        self.spins[vertex]
    }

    /// Cached E = -sum over links of S_u S_v, in link-energy units.
    #[inline]
    pub fn energy(&self) -> i64 {
        self.energy
    }

    /// Full O(n_links) recomputation, the cache-integrity reference.
    pub fn recompute_energy(&self, geom: &TorusGeometry) -> i64 {
        let mut e = 0i64;
        for link in 0..geom.n_links() {
            let (a, b) = geom.endpoints_of(link);
            e -= (self.spins[a] * self.spins[b]) as i64;
        }
        e
    }

    /// Flip every spin. E is invariant under the global Z2 symmetry.
    pub fn global_flip(&mut self) {
        for s in &mut self.spins {
            *s = -*s;
        }
    }
}

/// One Metropolis sweep: n_spins single-site flip proposals at uniformly
/// random sites, each accepted with probability min(1, e^{-beta dE}).
pub fn metropolis_sweep<S: Scalar, R: Rng>(
    state: &mut SpinConfiguration,
    geom: &TorusGeometry,
    beta: S,
    rng: &mut R,
) {
    let n = geom.n_spins();
    // dE of a single-site flip is 2*s_v*sum(s_neighbors) over the 4 incident
    // links; with 4 terms of ±1 the positive cases are dE = 4 and dE = 8.
    let four = S::real(4.0);
    let accept4 = (-beta * four).exp().to_f64_lossy();
    let accept8 = (-beta * four * S::real(2.0)).exp().to_f64_lossy();
    for _ in 0..n {
        let v = rng.random_range(0..n);
        let mut neighbor_sum = 0i32;
        for &link in geom.links_at_vertex(v) {
            let (a, b) = geom.endpoints_of(link as usize);
            let other = if a == v { b } else { a };
            neighbor_sum += state.spins[other] as i32;
        }
        let de = 2 * (state.spins[v] as i32) * neighbor_sum;
        let accept = if de <= 0 {
            true
        } else {
            let p = if de == 4 { accept4 } else { accept8 };
            rng.random::<f64>() < p
        };
        if accept {
            state.spins[v] = -state.spins[v];
            state.energy += de as i64;
        }
    }
}

/// Reusable scratch for cluster growth.
#[derive(Debug, Clone)]
pub struct WolffBuffers {
    in_cluster: Vec<bool>,
    frontier: Vec<u32>,
    cluster: Vec<u32>,
}

impl WolffBuffers {
    pub fn new(geom: &TorusGeometry) -> Self {
        Self {
            in_cluster: vec![false; geom.n_spins()],
            frontier: Vec::with_capacity(geom.n_spins()),
            cluster: Vec::with_capacity(geom.n_spins()),
        }
    }
}

/// One Wolff step: grow a cluster from a random seed vertex with per-link
/// bond probability p = 1 - e^{-2 beta} between aligned endpoints, then flip
/// it. Doubled links at L = 2 are tested independently. Returns the cluster
/// size.
pub fn wolff_step<S: Scalar, R: Rng>(
    state: &mut SpinConfiguration,
    geom: &TorusGeometry,
    beta: S,
    rng: &mut R,
    buf: &mut WolffBuffers,
) -> usize {
    let two = S::real(2.0);
    let p_add = (S::one() - (-two * beta).exp()).to_f64_lossy();

    buf.in_cluster.iter_mut().for_each(|b| *b = false);
    buf.frontier.clear();
    buf.cluster.clear();

    let seed = rng.random_range(0..geom.n_spins());
    let seed_spin = state.spins[seed];
    buf.in_cluster[seed] = true;
    buf.frontier.push(seed as u32);
    buf.cluster.push(seed as u32);

    while let Some(v) = buf.frontier.pop() {
        let v = v as usize;
        for &link in geom.links_at_vertex(v) {
            let (a, b) = geom.endpoints_of(link as usize);
            let other = if a == v { b } else { a };
            if !buf.in_cluster[other]
                && state.spins[other] == seed_spin
                && rng.random::<f64>() < p_add
            {
                buf.in_cluster[other] = true;
                buf.frontier.push(other as u32);
                buf.cluster.push(other as u32);
            }
        }
    }

    // Only boundary links change sign: dE = 2 sum of S_u S_v over links with
    // exactly one endpoint inside the cluster, evaluated before the flip.
    let mut de = 0i64;
    for &v in &buf.cluster {
        let v = v as usize;
        for &link in geom.links_at_vertex(v) {
            let (a, b) = geom.endpoints_of(link as usize);
            let other = if a == v { b } else { a };
            if !buf.in_cluster[other] {
                de += 2 * (state.spins[v] * state.spins[other]) as i64;
            }
        }
    }
    for &v in &buf.cluster {
        let v = v as usize;
        state.spins[v] = -state.spins[v];
    }
    state.energy += de;
    buf.cluster.len()
}

/// One compound sweep of the configured algorithm.
pub fn compound_sweep<S: Scalar, R: Rng>(
    state: &mut SpinConfiguration,
    geom: &TorusGeometry,
    beta: S,
    algorithm: Algorithm,
    rng: &mut R,
    buf: &mut WolffBuffers,
) {
    match algorithm {
        Algorithm::Metropolis => metropolis_sweep(state, geom, beta, rng),
        Algorithm::Wolff => {
            wolff_step(state, geom, beta, rng, buf);
        }
        Algorithm::Mixed => {
            wolff_step(state, geom, beta, rng, buf);
            metropolis_sweep(state, geom, beta, rng);
        }
    }
}

/// Run one chain: thermalize, then hand every sampled configuration to the
/// collector. Fully deterministic given (seed, config); a collector error
/// aborts the chain.
pub fn run_chain<S, F>(geom: &TorusGeometry, config: &ChainConfig, mut collector: F) -> Result<()>
where
    S: Scalar,
    F: FnMut(&SpinConfiguration) -> Result<()>,
{
    config.validate()?;
    let beta = S::real(config.beta);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut state = SpinConfiguration::random(geom, &mut rng);
    let mut buf = WolffBuffers::new(geom);

    for _ in 0..config.n_therm {
        compound_sweep(&mut state, geom, beta, config.algorithm, &mut rng, &mut buf);
    }
    for _ in 0..config.n_measure {
        for _ in 0..config.measure_interval {
            compound_sweep(&mut state, geom, beta, config.algorithm, &mut rng, &mut buf);
        }
        collector(&state)?;
    }
    Ok(())
}

/// Stable per-chain seed stream: successive splitmix64 absorption of the
/// master seed, lattice size, and beta grid index. Changing any field gives
/// an unrelated stream; the mapping is fixed for reproducibility across
/// parallel execution orders.
pub fn derive_chain_seed(master: u64, l: usize, beta_index: usize) -> u64 {
    let mut s = splitmix64(master ^ 0x9e37_79b9_7f4a_7c15);
    s = splitmix64(s ^ (l as u64));
    splitmix64(s ^ (beta_index as u64))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
