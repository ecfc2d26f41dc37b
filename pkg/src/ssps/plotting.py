"""File-rendered matplotlib figures accompanying the CLI's delimited output."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def solution_figure(t, x, dx, title: str, path: str) -> None:
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    ax1.plot(t, x, lw=1.2)
    ax1.set_ylabel("x(t)")
    ax1.set_title(title)
    ax2.plot(t, dx, lw=1.2, color="tab:orange")
    ax2.set_ylabel("x'(t)")
    ax2.set_xlabel("t")
    for ax in (ax1, ax2):
        ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def verify_figure(t, res, sym, per, title: str, path: str) -> None:
    fig, ax = plt.subplots(figsize=(7, 4.5))
    tiny = 1e-18
    ax.semilogy(t, np.abs(res) + tiny, label="|residual|", lw=1.0)
    ax.semilogy(t, np.abs(sym) + tiny, label="|x(t)+x(t-1)-c|", lw=1.0)
    ax.semilogy(t, np.abs(per) + tiny, label="|x(t+2)-x(t)|", lw=1.0)
    ax.set_xlabel("t")
    ax.set_ylabel("defect")
    ax.set_title(title)
    ax.grid(alpha=0.3, which="both")
    ax.legend(loc="best", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def sweep_figure(rs, moduli, amplitudes, residuals, title: str, path: str) -> None:
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    ax1.plot(rs, moduli, "o-", ms=3, label="modulus")
    ax1.plot(rs, amplitudes, "s-", ms=3, label="amplitude")
    ax1.set_ylabel("modulus / amplitude")
    ax1.set_title(title)
    ax1.legend(loc="best", fontsize=9)
    ax2.semilogy(rs, np.asarray(residuals) + 1e-18, "o-", ms=3, color="tab:red")
    ax2.set_ylabel("max residual")
    ax2.set_xlabel("r")
    for ax in (ax1, ax2):
        ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def simulate_figure(ts, x_sim, x_closed, title: str, path: str) -> None:
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    ax1.plot(ts, x_closed, lw=1.4, label="closed form")
    ax1.plot(ts, x_sim, "--", lw=1.0, label="method of steps")
    ax1.set_ylabel("x(t)")
    ax1.set_title(title)
    ax1.legend(loc="best", fontsize=9)
    ax2.semilogy(ts, np.abs(np.asarray(x_sim) - np.asarray(x_closed)) + 1e-18, lw=1.0, color="tab:red")
    ax2.set_ylabel("|x_sim - x_closed|")
    ax2.set_xlabel("t")
    for ax in (ax1, ax2):
        ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
