"""
Генерация small-world графов Уоттса-Строгаца и проверка их структуры
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx
import numpy as np

Edge = Tuple[int, int]


@dataclass(frozen=True)
class NetworkParams:
    m: int
    k: int
    rho: float

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"m must be >= 2, got {self.m}")
        # k = m - 1 (полный граф) допустим всегда, в том числе k = 1 при m = 2
        if self.k != self.m - 1:
            if not 2 <= self.k < self.m - 1:
                raise ValueError(f"k must be in [2, {self.m - 1}], got {self.k}")
            if self.k % 2:
                raise ValueError(f"k must be even unless k = m - 1 ({self.m - 1}), got {self.k}")
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError(f"rho must be in [0, 1], got {self.rho}")

    @property
    def is_complete(self) -> bool:
        return self.k == self.m - 1


@dataclass(frozen=True)
class Network:
    """Неизменяемый неориентированный граф агентов"""
    num_nodes: int
    edges: Tuple[Edge, ...]
    adjacency: Tuple[FrozenSet[int], ...]
    params: Optional[NetworkParams] = field(default=None, compare=False)

    @classmethod
    def from_edges(cls, num_nodes: int, edges: Iterable[Edge],
                   params: Optional[NetworkParams] = None) -> "Network":
        """
        Построение сети из списка рёбер без какой-либо нормализации

        Args:
            num_nodes: Количество узлов
            edges: Пары узлов
            params: Параметры, с которыми сеть была сгенерирована

        Returns:
            Network: Сеть со смежностью, выведенной из рёбер
        """
        edge_list = tuple((int(u), int(v)) for u, v in edges)
        neighbours: List[set] = [set() for _ in range(num_nodes)]
        for u, v in edge_list:
            if 0 <= u < num_nodes and 0 <= v < num_nodes:
                neighbours[u].add(v)
                neighbours[v].add(u)
        return cls(num_nodes, edge_list, tuple(frozenset(n) for n in neighbours), params)

    @classmethod
    def from_graph(cls, graph: nx.Graph, params: Optional[NetworkParams] = None) -> "Network":
        edges = sorted((min(u, v), max(u, v)) for u, v in graph.edges())
        return cls.from_edges(graph.number_of_nodes(), edges, params)

    def to_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.num_nodes))
        graph.add_edges_from(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        return graph

    def degree(self, node: int) -> int:
        return len(self.adjacency[node])


@dataclass(frozen=True)
class NetworkStats:
    num_nodes: int
    num_edges: int
    mean_degree: float
    min_degree: int
    max_degree: int
    clustering: float
    components: int
    avg_path_length: Optional[float]


def ring_lattice(m: int, k: int) -> nx.Graph:
    """Регулярное кольцо: узел i связан с i±1, ..., i±k/2 по модулю m"""
    graph = nx.Graph()
    graph.add_nodes_from(range(m))
    for j in range(1, k // 2 + 1):
        graph.add_edges_from((i, (i + j) % m) for i in range(m))
    return graph


def generate(params: NetworkParams, rng: np.random.Generator) -> Network:
    """
    Генерация small-world сети

    Для k = m - 1 возвращается полный граф без прохода перестановки.
    Иначе строится кольцо, затем для каждого смещения j = 1..k/2 и каждого узла i
    по возрастанию ребро {i, i+j} с вероятностью rho переносится на случайный узел w,
    который не совпадает с i и ещё не связан с ним. Узел i остаётся на месте.

    Args:
        params: Параметры сети (m, k, rho)
        rng: Генератор случайных чисел прогона

    Returns:
        Network: Сгенерированная сеть
    """
    m, k, rho = params.m, params.k, params.rho

    if params.is_complete:
        return Network.from_graph(nx.complete_graph(m), params)

    graph = ring_lattice(m, k)
    if rho > 0.0:
        for j in range(1, k // 2 + 1):
            for i in range(m):
                if rng.random() >= rho:
                    continue
                v = (i + j) % m
                if not graph.has_edge(i, v):
                    continue
                targets = [w for w in range(m) if w != i and not graph.has_edge(i, w)]
                if not targets:
                    continue
                w = targets[int(rng.integers(len(targets)))]
                graph.remove_edge(i, v)
                graph.add_edge(i, w)

    network = Network.from_graph(graph, params)
    logging.debug(f"Generated network m={m} k={k} rho={rho} edges={len(network.edges)}")
    return network


def validate(net: Network) -> List[str]:
    """
    Проверка инвариантов сети

    Args:
        net: Проверяемая сеть

    Returns:
        List[str]: Пустой список, если все инварианты выполнены, иначе по записи на нарушение
    """
    violations = []
    m = net.num_nodes

    if m < 2:
        violations.append(f"num_nodes {m} < 2")

    out_of_range = [e for e in net.edges if not (0 <= e[0] < m and 0 <= e[1] < m)]
    if out_of_range:
        violations.append(f"edges with nodes out of range: {out_of_range}")

    loops = [e for e in net.edges if e[0] == e[1]]
    if loops:
        violations.append(f"self-loops: {loops}")

    seen = set()
    duplicates = []
    for u, v in net.edges:
        key = frozenset((u, v))
        if key in seen:
            duplicates.append((u, v))
        seen.add(key)
    if duplicates:
        violations.append(f"duplicate edges: {duplicates}")

    asymmetric = [
        (u, v) for u in range(len(net.adjacency)) for v in net.adjacency[u]
        if not (0 <= v < len(net.adjacency) and u in net.adjacency[v])
    ]
    if asymmetric:
        violations.append(f"asymmetric adjacency: {asymmetric}")

    derived = Network.from_edges(m, net.edges)
    if len(net.adjacency) != m or derived.adjacency != net.adjacency:
        violations.append("adjacency does not match edge set")

    params = net.params
    if params is not None and not params.is_complete:
        expected = m * params.k // 2
        if len(seen) != expected:
            violations.append(f"edge count {len(seen)} != m*k/2 = {expected}")
        if params.rho == 0.0:
            half = params.k // 2
            lattice = all(
                net.adjacency[i] == frozenset((i + d) % m for d in range(-half, half + 1) if d)
                for i in range(min(m, len(net.adjacency)))
            )
            if not lattice:
                violations.append("rho=0 network is not the ring lattice")
    elif params is not None and len(seen) != m * (m - 1) // 2:
        violations.append(f"complete graph has {len(seen)} edges, expected {m * (m - 1) // 2}")

    return violations


def random_edge(net: Network, rng: np.random.Generator) -> Edge:
    """Равновероятный выбор ребра"""
    if not net.edges:
        raise RuntimeError("Cannot select an edge from a network without edges")
    return net.edges[int(rng.integers(len(net.edges)))]


def describe(net: Network) -> NetworkStats:
    """
    Структурные характеристики сети: степени, кластеризация, связность

    Args:
        net: Сеть

    Returns:
        NetworkStats: Сводка; средняя длина пути только для связной сети
    """
    graph = net.to_graph()
    degrees = [d for _, d in graph.degree()]
    components = nx.number_connected_components(graph)
    return NetworkStats(
        num_nodes=graph.number_of_nodes(),
        num_edges=graph.number_of_edges(),
        mean_degree=2 * graph.number_of_edges() / graph.number_of_nodes(),
        min_degree=min(degrees),
        max_degree=max(degrees),
        clustering=nx.average_clustering(graph),
        components=components,
        avg_path_length=nx.average_shortest_path_length(graph) if components == 1 else None,
    )


def write_edgelist(net: Network, path: str) -> None:
    """Экспорт в текстовый файл: по строке "u v" на ребро, u < v, по возрастанию"""
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        nx.write_edgelist(net.to_graph(), target, data=False, encoding="utf-8")
    except OSError as e:
        raise OSError(f"Failed to write edge list to {target}: {e}") from e


def read_edgelist(path: str, num_nodes: int) -> Network:
    source = Path(path)
    try:
        graph = nx.read_edgelist(source, nodetype=int, data=False, encoding="utf-8")
    except OSError as e:
        raise OSError(f"Failed to read edge list from {source}: {e}") from e
    graph.add_nodes_from(range(num_nodes))
    return Network.from_graph(graph)
