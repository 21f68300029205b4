// Minimal parser for the dominance graphs the service emits. The format is
// under our control (one node or edge statement per line, quoted labels),
// so a line scanner is enough; no generic DOT grammar needed.

export interface DominanceGraph {
  nodes: { label: string; pareto: boolean }[];
  edges: { from: string; to: string }[];
  draft: boolean;
}

const NODE_RE = /^\s*"((?:[^"\\]|\\.)*)"\s*\[([^\]]*)\];\s*$/;
const EDGE_RE = /^\s*"((?:[^"\\]|\\.)*)"\s*->\s*"((?:[^"\\]|\\.)*)";\s*$/;

export function parseDominanceDot(text: string): DominanceGraph {
  const nodes: DominanceGraph['nodes'] = [];
  const edges: DominanceGraph['edges'] = [];
  let draft = false;
  for (const line of text.split('\n')) {
    if (line.includes('draft export')) {
      draft = true;
      continue;
    }
    const edge = EDGE_RE.exec(line);
    if (edge) {
      edges.push({ from: unescapeLabel(edge[1]), to: unescapeLabel(edge[2]) });
      continue;
    }
    const node = NODE_RE.exec(line);
    if (node) {
      nodes.push({
        label: unescapeLabel(node[1]),
        pareto: node[2].includes('peripheries=2'),
      });
    }
  }
  return { nodes, edges, draft };
}

function unescapeLabel(raw: string): string {
  return raw.replace(/\\(.)/g, '$1');
}

export interface LayoutNode {
  label: string;
  pareto: boolean;
  x: number;
  y: number;
}

/**
 * Circular layout: good enough for the small object sets a session holds,
 * and it renders dominance cycles honestly (no hierarchy is implied, since
 * dominance is not transitive).
 */
export function circularLayout(
  graph: DominanceGraph,
  width: number,
  height: number,
  margin = 40,
): LayoutNode[] {
  const n = graph.nodes.length;
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.max(Math.min(width, height) / 2 - margin, 10);
  return graph.nodes.map((node, i) => {
    const angle = (2 * Math.PI * i) / Math.max(n, 1) - Math.PI / 2;
    return {
      label: node.label,
      pareto: node.pareto,
      x: n === 1 ? cx : cx + radius * Math.cos(angle),
      y: n === 1 ? cy : cy + radius * Math.sin(angle),
    };
  });
}
