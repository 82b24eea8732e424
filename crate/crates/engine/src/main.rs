use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use qbrush::backend::BackendKind;
use qbrush::jobs::default_workers;
use qbrush::script::{apply_script, ApplyOptions, ScriptError, StrokeScript};
use qbrush::Engine;
use qbrush_core::canvas::CanvasImage;

#[derive(Parser)]
#[command(name = "qbrush", version, about = "Quantum brushes for raster images")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the HTTP engine.
    Serve {
        #[arg(long, default_value_t = 8787)]
        port: u16,
        /// Worker threads (default: cores, at most 4).
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Directory of static UI assets served at `/`.
        #[arg(long)]
        static_dir: Option<PathBuf>,
        /// PNG to load as the initial canvas.
        #[arg(long)]
        canvas: Option<PathBuf>,
    },
    /// Replay a stroke script on an image.
    Apply {
        #[arg(long)]
        image: PathBuf,
        #[arg(long)]
        script: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Base seed; entry i runs with seed + i.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_parser = ["exact", "sampling", "noisy"])]
        backend: Option<String>,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Serve { port, workers, host, static_dir, canvas } => match serve(port, workers, host, static_dir, canvas) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::FAILURE
            }
        },
        Command::Apply { image, script, out, seed, backend } => {
            let backend = backend.map(|b| b.parse::<BackendKind>().expect("clap restricts values"));
            match apply(&image, &script, &out, ApplyOptions { seed, backend }) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code())
                }
            }
        }
    }
}

fn apply(image: &PathBuf, script: &PathBuf, out: &PathBuf, opts: ApplyOptions) -> Result<(), ScriptError> {
    let script = StrokeScript::parse(&std::fs::read_to_string(script)?)?;
    let mut canvas = CanvasImage::load_png(&std::fs::read(image)?)?;
    apply_script(&mut canvas, &script, &opts)?;
    std::fs::write(out, canvas.save_png()?)?;
    Ok(())
}

fn serve(
    port: u16,
    workers: Option<usize>,
    host: String,
    static_dir: Option<PathBuf>,
    canvas: Option<PathBuf>,
) -> anyhow::Result<()> {
    tracing_subscriber::fmt()
        .with_env_filter(tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()))
        .init();
    let engine = Engine::new(workers.unwrap_or_else(default_workers));
    if let Some(path) = canvas {
        let bytes = std::fs::read(&path).with_context(|| format!("reading {}", path.display()))?;
        engine.set_canvas(CanvasImage::load_png(&bytes)?);
    }
    let addr: SocketAddr = format!("{host}:{port}").parse().context("bad listen address")?;
    let app = qbrush::api::router(engine, static_dir);
    tokio::runtime::Runtime::new()?.block_on(async move {
        let listener = tokio::net::TcpListener::bind(addr).await?;
        tracing::info!(%addr, "listening");
        axum::serve(listener, app)
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await?;
        anyhow::Ok(())
    })
}
