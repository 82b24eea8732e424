//! The stroke manager: snapshot-at-submit jobs on a FIFO worker pool.

use std::collections::{BTreeMap, VecDeque};
use std::sync::{Arc, Condvar, Mutex, MutexGuard};
use std::thread::JoinHandle;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;
use tracing::{debug, warn};

use qbrush_core::backend::Backend;
use qbrush_core::canvas::{paste, preview, CanvasImage, PixelDiff, Snapshot};
use qbrush_core::{render, BrushKind, BrushRequest};

use crate::backend::BackendSpec;

pub const MAX_DEFAULT_WORKERS: usize = 4;

pub type JobId = u64;

/// Builds the backend a job runs on. Tests swap this out for slowed or failing backends.
pub type BackendFactory = Arc<dyn Fn(&BackendSpec) -> Box<dyn Backend<f64>> + Send + Sync>;

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get()).min(MAX_DEFAULT_WORKERS)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JobStatus {
    Queued,
    Running,
    Done,
    Failed,
    Pasted,
}

impl JobStatus {
    pub fn is_terminal(self) -> bool {
        matches!(self, JobStatus::Done | JobStatus::Failed | JobStatus::Pasted)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JobError {
    #[error("job {0} not found")]
    NotFound(JobId),
    #[error("no canvas loaded")]
    NoCanvas,
    #[error("job {id} is {status:?}; {action} needs {needs}")]
    State { id: JobId, status: JobStatus, action: &'static str, needs: &'static str },
    #[error("paste failed: {0}")]
    Paste(String),
    #[error("timed out waiting for job {0}")]
    Timeout(JobId),
}

/// Read-only view of a job.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JobInfo {
    pub job_id: JobId,
    pub brush_kind: BrushKind,
    pub snapshot_id: u64,
    pub seed: u64,
    pub status: JobStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub changed_pixels: Option<usize>,
}

struct Job {
    snapshot: Snapshot,
    request: Arc<BrushRequest>,
    backend: BackendSpec,
    seed: u64,
    status: JobStatus,
    result: Option<Arc<PixelDiff>>,
    error: Option<String>,
    /// Bumped on every (re)queue so a stale worker result is dropped.
    generation: u64,
}

impl Job {
    fn info(&self, id: JobId) -> JobInfo {
        JobInfo {
            job_id: id,
            brush_kind: self.request.brush.kind(),
            snapshot_id: self.snapshot.id,
            seed: self.seed,
            status: self.status,
            error: self.error.clone(),
            changed_pixels: self.result.as_ref().map(|d| d.len()),
        }
    }
}

#[derive(Default)]
struct State {
    canvas: Option<Arc<CanvasImage>>,
    canvas_version: u64,
    jobs: BTreeMap<JobId, Job>,
    queue: VecDeque<JobId>,
    next_id: JobId,
    shutdown: bool,
}

struct Shared {
    state: Mutex<State>,
    /// Signalled when work is queued or on shutdown.
    work: Condvar,
    /// Signalled when any job changes status.
    progress: Condvar,
    factory: BackendFactory,
}

impl Shared {
    fn lock(&self) -> MutexGuard<'_, State> {
        self.state.lock().unwrap_or_else(|e| e.into_inner())
    }
}

/// Cheap to clone; the worker threads stop when the last handle is dropped.
#[derive(Clone)]
pub struct Engine {
    shared: Arc<Shared>,
    _workers: Arc<WorkerPool>,
}

struct WorkerPool {
    shared: Arc<Shared>,
    handles: Vec<JoinHandle<()>>,
}

impl Drop for WorkerPool {
    fn drop(&mut self) {
        self.shared.lock().shutdown = true;
        self.shared.work.notify_all();
        for h in self.handles.drain(..) {
            let _ = h.join();
        }
    }
}

impl Engine {
    pub fn new(workers: usize) -> Self {
        Self::with_backend_factory(workers, Arc::new(|spec: &BackendSpec| spec.build()))
    }

    pub fn with_backend_factory(workers: usize, factory: BackendFactory) -> Self {
        let shared = Arc::new(Shared {
            state: Mutex::new(State::default()),
            work: Condvar::new(),
            progress: Condvar::new(),
            factory,
        });
        let handles = (0..workers.max(1))
            .map(|i| {
                let shared = Arc::clone(&shared);
                std::thread::Builder::new()
                    .name(format!("qbrush-worker-{i}"))
                    .spawn(move || worker_loop(&shared))
                    .expect("spawn worker thread")
            })
            .collect();
        Engine {
            _workers: Arc::new(WorkerPool { shared: Arc::clone(&shared), handles }),
            shared,
        }
    }

    pub fn set_canvas(&self, image: CanvasImage) -> u64 {
        let mut st = self.shared.lock();
        st.canvas = Some(Arc::new(image));
        st.canvas_version += 1;
        st.canvas_version
    }

    pub fn canvas(&self) -> Option<Arc<CanvasImage>> {
        self.shared.lock().canvas.clone()
    }

    /// Captures the live canvas and queues the job. `seed` defaults to the job id.
    pub fn submit(&self, request: BrushRequest, backend: BackendSpec, seed: Option<u64>) -> Result<JobId, JobError> {
        let mut st = self.shared.lock();
        let image = st.canvas.clone().ok_or(JobError::NoCanvas)?;
        st.next_id += 1;
        let id = st.next_id;
        let snapshot = Snapshot::new(st.canvas_version, image);
        st.jobs.insert(
            id,
            Job {
                snapshot,
                request: Arc::new(request),
                backend,
                seed: seed.unwrap_or(id),
                status: JobStatus::Queued,
                result: None,
                error: None,
                generation: 0,
            },
        );
        st.queue.push_back(id);
        drop(st);
        self.shared.work.notify_one();
        debug!(job = id, "queued");
        Ok(id)
    }

    /// Re-executes a finished job against its original snapshot, optionally with a new
    /// seed. A queued job only picks up the new seed.
    pub fn rerun(&self, id: JobId, seed: Option<u64>) -> Result<JobInfo, JobError> {
        let mut st = self.shared.lock();
        let job = st.jobs.get_mut(&id).ok_or(JobError::NotFound(id))?;
        match job.status {
            JobStatus::Queued => {}
            JobStatus::Done | JobStatus::Failed => {
                job.status = JobStatus::Queued;
                job.result = None;
                job.error = None;
                job.generation += 1;
            }
            status @ (JobStatus::Running | JobStatus::Pasted) => {
                return Err(JobError::State { id, status, action: "run", needs: "queued, done or failed" });
            }
        }
        if let Some(s) = seed {
            job.seed = s;
        }
        let info = job.info(id);
        if !st.queue.contains(&id) {
            st.queue.push_back(id);
        }
        drop(st);
        self.shared.work.notify_one();
        self.shared.progress.notify_all();
        Ok(info)
    }

    /// Writes the job's diff into the live canvas.
    pub fn paste(&self, id: JobId) -> Result<JobInfo, JobError> {
        let mut st = self.shared.lock();
        let st = &mut *st;
        let job = st.jobs.get_mut(&id).ok_or(JobError::NotFound(id))?;
        if job.status != JobStatus::Done {
            return Err(JobError::State { id, status: job.status, action: "paste", needs: "done" });
        }
        let diff = job.result.clone().expect("done job has a result");
        let live = st.canvas.as_mut().ok_or(JobError::NoCanvas)?;
        paste(Arc::make_mut(live), &diff).map_err(|e| JobError::Paste(e.to_string()))?;
        st.canvas_version += 1;
        job.status = JobStatus::Pasted;
        let info = job.info(id);
        self.shared.progress.notify_all();
        Ok(info)
    }

    /// Forgets the job. A running job finishes in the background and its result is dropped.
    pub fn delete(&self, id: JobId) -> Result<(), JobError> {
        let mut st = self.shared.lock();
        st.jobs.remove(&id).ok_or(JobError::NotFound(id))?;
        st.queue.retain(|&q| q != id);
        drop(st);
        self.shared.progress.notify_all();
        Ok(())
    }

    pub fn info(&self, id: JobId) -> Result<JobInfo, JobError> {
        let st = self.shared.lock();
        st.jobs.get(&id).map(|j| j.info(id)).ok_or(JobError::NotFound(id))
    }

    pub fn list(&self) -> Vec<JobInfo> {
        self.shared.lock().jobs.iter().map(|(&id, j)| j.info(id)).collect()
    }

    pub fn diff(&self, id: JobId) -> Result<Arc<PixelDiff>, JobError> {
        let st = self.shared.lock();
        let job = st.jobs.get(&id).ok_or(JobError::NotFound(id))?;
        job.result
            .clone()
            .ok_or(JobError::State { id, status: job.status, action: "preview", needs: "done or pasted" })
    }

    pub fn snapshot(&self, id: JobId) -> Result<Snapshot, JobError> {
        let st = self.shared.lock();
        st.jobs.get(&id).map(|j| j.snapshot.clone()).ok_or(JobError::NotFound(id))
    }

    /// The job's snapshot with its diff applied.
    pub fn preview(&self, id: JobId) -> Result<CanvasImage, JobError> {
        let diff = self.diff(id)?;
        let snap = self.snapshot(id)?;
        preview(&snap.image, &diff).map_err(|e| JobError::Paste(e.to_string()))
    }

    /// Blocks until the job leaves the queue and the running state.
    pub fn wait(&self, id: JobId, timeout: Duration) -> Result<JobInfo, JobError> {
        let deadline = Instant::now() + timeout;
        let mut st = self.shared.lock();
        loop {
            let job = st.jobs.get(&id).ok_or(JobError::NotFound(id))?;
            if job.status.is_terminal() {
                return Ok(job.info(id));
            }
            let left = deadline.saturating_duration_since(Instant::now());
            if left.is_zero() {
                return Err(JobError::Timeout(id));
            }
            st = self.shared.progress.wait_timeout(st, left).unwrap_or_else(|e| e.into_inner()).0;
        }
    }
}

fn worker_loop(shared: &Shared) {
    loop {
        let (id, generation, snapshot, request, backend, seed) = {
            let mut st = shared.lock();
            let id = loop {
                if st.shutdown {
                    return;
                }
                if let Some(id) = st.queue.pop_front() {
                    break id;
                }
                st = shared.work.wait(st).unwrap_or_else(|e| e.into_inner());
            };
            let Some(job) = st.jobs.get_mut(&id) else { continue };
            job.status = JobStatus::Running;
            let claim = (
                id,
                job.generation,
                Arc::clone(&job.snapshot.image),
                Arc::clone(&job.request),
                job.backend.clone(),
                job.seed,
            );
            shared.progress.notify_all();
            claim
        };

        let started = Instant::now();
        let outcome = render(&snapshot, &request, (shared.factory)(&backend).as_ref(), seed);
        debug!(job = id, elapsed_ms = started.elapsed().as_millis() as u64, "finished");

        let mut st = shared.lock();
        if let Some(job) = st.jobs.get_mut(&id) {
            if job.generation == generation && job.status == JobStatus::Running {
                match outcome {
                    Ok(diff) => {
                        job.status = JobStatus::Done;
                        job.result = Some(Arc::new(diff));
                    }
                    Err(e) => {
                        warn!(job = id, error = %e, "brush failed");
                        job.status = JobStatus::Failed;
                        job.error = Some(e.to_string());
                    }
                }
            }
        }
        drop(st);
        shared.progress.notify_all();
    }
}
