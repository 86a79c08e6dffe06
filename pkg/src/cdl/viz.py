"""Figure rendering for automata and adjudicated interactions.

Report paths of the CLI can save a matplotlib rendering next to their
textual output: automata are drawn as graphs, interactions as a two-lane
timeline with the verdict position marked.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import networkx as nx

from .autom import SymbolicAutomaton
from .traces import Interaction


def render_automaton(a: SymbolicAutomaton, path: str) -> None:
    """Draw the automaton graph and save it to path (format per extension)."""
    graph = nx.MultiDiGraph()
    for s, info in a.states.items():
        graph.add_node(s)
    labels = {}
    for e in a.edges:
        if graph.has_edge(e.src, e.dst):
            labels[(e.src, e.dst)] += "\n" + e.label()
        else:
            labels[(e.src, e.dst)] = e.label()
        graph.add_edge(e.src, e.dst)
    pos = nx.spring_layout(graph, seed=7)
    fig, ax = plt.subplots(figsize=(8, 6))
    rejecting = [s for s, info in a.states.items() if info.rejecting]
    others = [s for s in a.states if s not in rejecting]
    nx.draw_networkx_nodes(graph, pos, nodelist=others, node_color="#cfe2f3",
                           node_size=1400, ax=ax)
    nx.draw_networkx_nodes(graph, pos, nodelist=rejecting, node_color="#f4cccc",
                           node_size=1400, ax=ax, linewidths=2,
                           edgecolors="#990000")
    nx.draw_networkx_edges(graph, pos, ax=ax, connectionstyle="arc3,rad=0.12",
                           arrowsize=16, node_size=1400)
    nx.draw_networkx_labels(graph, pos,
                            {s: a.states[s].name for s in a.states},
                            font_size=9, ax=ax)
    nx.draw_networkx_edge_labels(graph, pos, labels, font_size=7, ax=ax,
                                 label_pos=0.4)
    ax.scatter(*pos[a.initial], s=2100, facecolors="none",
               edgecolors="#444444", linestyle="dashed")
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_interaction(x: Interaction, path: str, verdict_index=None,
                       title: str = "") -> None:
    """Draw both parties' attempted actions per step; mark the verdict."""
    n = max(len(x), 1)
    fig, ax = plt.subplots(figsize=(max(6, 1.4 * n), 3))
    for party, trace in ((0, x.trace0), (1, x.trace1)):
        y = 1 - party
        for i, event in enumerate(trace):
            text = ", ".join(sorted(event)) if event else "∅"
            ax.text(i, y, text, ha="center", va="center", fontsize=9,
                    bbox=dict(boxstyle="round", facecolor="#eef4fb"))
    if verdict_index is not None:
        ax.axvline(verdict_index, color="#990000", linestyle="--")
    ax.set_xlim(-0.6, n - 0.4)
    ax.set_ylim(-0.6, 1.6)
    ax.set_xticks(range(len(x)))
    ax.set_yticks([0, 1])
    ax.set_yticklabels(["party 1", "party 0"])
    ax.set_xlabel("step")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
