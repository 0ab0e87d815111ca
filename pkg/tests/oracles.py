"""Independent reference implementations used to cross-check the engine.

Everything here is deliberately written in a different style from the
package (plain tuples and nested lists, no bitboards, no shared helpers)
so that agreement is meaningful.
"""

from functools import lru_cache


# --- tic-tac-toe ---------------------------------------------------------

_TTT_LINES = ((0, 1, 2), (3, 4, 5), (6, 7, 8), (0, 3, 6), (1, 4, 7), (2, 5, 8), (0, 4, 8), (2, 4, 6))


def ttt_winner(board):
    for i, j, k in _TTT_LINES:
        if board[i] and board[i] == board[j] == board[k]:
            return board[i]
    return 0


def ttt_enumerate_completed_games():
    """(x_wins, o_wins, draws) over every distinct completed game (move sequence)."""
    counts = [0, 0, 0]

    def rec(board, player):
        w = ttt_winner(board)
        if w:
            counts[w - 1] += 1
            return
        if 0 not in board:
            counts[2] += 1
            return
        for c in range(9):
            if board[c] == 0:
                rec(board[:c] + (player,) + board[c + 1:], 3 - player)

    rec((0,) * 9, 1)
    return tuple(counts)


def ttt_winning_moves(board, player):
    """Cells where `player` completes a line immediately."""
    out = []
    for c in range(9):
        if board[c] == 0 and ttt_winner(board[:c] + (player,) + board[c + 1:]) == player:
            out.append(c)
    return out


# --- connect four --------------------------------------------------------

def connect4_distinct_positions(plies):
    """Distinct boards reached after exactly `plies` alternating drops.

    Boards are tuples of bottom-up column tuples. No four-in-a-row can
    exist before ply 7, so no terminal pruning is needed for small depths.
    """
    assert plies < 7
    frontier = {((),) * 7}
    for depth in range(plies):
        player = depth % 2 + 1
        nxt = set()
        for b in frontier:
            for c in range(7):
                if len(b[c]) < 6:
                    nxt.add(b[:c] + (b[c] + (player,),) + b[c + 1:])
        frontier = nxt
    return frontier


# --- othello --------------------------------------------------------------

_DIRS8 = ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1))


def othello_moves(board, player):
    """{(r, c): [flipped cells]} for a 8x8 nested-list board of 0/1/2."""
    opp = 3 - player
    out = {}
    for r in range(8):
        for c in range(8):
            if board[r][c] != 0:
                continue
            flips = []
            for dr, dc in _DIRS8:
                ray = []
                rr, cc = r + dr, c + dc
                while 0 <= rr < 8 and 0 <= cc < 8 and board[rr][cc] == opp:
                    ray.append((rr, cc))
                    rr += dr
                    cc += dc
                if ray and 0 <= rr < 8 and 0 <= cc < 8 and board[rr][cc] == player:
                    flips.extend(ray)
            if flips:
                out[(r, c)] = flips
    return out


# --- hex -------------------------------------------------------------------

def hex_winner_unionfind(board, n=11):
    """0 (none), 1 (top-bottom color), 2 (left-right color) via union-find."""
    top, bottom, left, right = n * n, n * n + 1, n * n + 2, n * n + 3
    parent = list(range(n * n + 4))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for r in range(n):
        for c in range(n):
            v = board[r][c]
            if v == 0:
                continue
            i = r * n + c
            if v == 1 and r == 0:
                union(i, top)
            if v == 1 and r == n - 1:
                union(i, bottom)
            if v == 2 and c == 0:
                union(i, left)
            if v == 2 and c == n - 1:
                union(i, right)
            for dr, dc in ((-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0)):
                rr, cc = r + dr, c + dc
                if 0 <= rr < n and 0 <= cc < n and board[rr][cc] == v:
                    union(i, rr * n + cc)

    if find(top) == find(bottom):
        return 1
    if find(left) == find(right):
        return 2
    return 0


# --- go ---------------------------------------------------------------------

def go_tromp_taylor_score(board, size=9, komi=6.5):
    """(black, white) scores: stones plus single-color empty regions, komi to white."""
    black = sum(1 for v in board if v == 1)
    white = sum(1 for v in board if v == 2)

    visited = set()
    for start in range(size * size):
        if board[start] != 0 or start in visited:
            continue
        region = {start}
        stack = [start]
        touches = set()
        while stack:
            p = stack.pop()
            r, c = divmod(p, size)
            for rr, cc in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
                if not (0 <= rr < size and 0 <= cc < size):
                    continue
                q = rr * size + cc
                if board[q] == 0:
                    if q not in region:
                        region.add(q)
                        stack.append(q)
                else:
                    touches.add(board[q])
        visited |= region
        if touches == {1}:
            black += len(region)
        elif touches == {2}:
            white += len(region)
    return float(black), float(white) + komi


def go_group_liberties(board, start, size=9):
    """(group cells, liberty cells) of the stone at `start`."""
    color = board[start]
    group = {start}
    libs = set()
    stack = [start]
    while stack:
        p = stack.pop()
        r, c = divmod(p, size)
        for rr, cc in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            if not (0 <= rr < size and 0 <= cc < size):
                continue
            q = rr * size + cc
            if board[q] == 0:
                libs.add(q)
            elif board[q] == color and q not in group:
                group.add(q)
                stack.append(q)
    return group, libs


# --- 2048 -------------------------------------------------------------------

def slide_2048(values, direction):
    """Slide a 4x4 nested list of tile VALUES (0 empty). Returns (grid, reward).

    direction: 0 left, 1 up, 2 right, 3 down. Pairs merge once starting
    from the movement side.
    """

    def merge_row_left(row):
        tiles = [v for v in row if v]
        out = []
        reward = 0
        i = 0
        while i < len(tiles):
            if i + 1 < len(tiles) and tiles[i] == tiles[i + 1]:
                out.append(tiles[i] * 2)
                reward += tiles[i] * 2
                i += 2
            else:
                out.append(tiles[i])
                i += 1
        return out + [0] * (4 - len(out)), reward

    grid = [list(r) for r in values]
    if direction == 1:      # up: transpose, slide left, transpose back
        grid = [list(col) for col in zip(*grid)]
    elif direction == 2:    # right: reverse rows
        grid = [r[::-1] for r in grid]
    elif direction == 3:    # down: transpose then reverse rows
        grid = [list(col)[::-1] for col in zip(*grid)]

    total = 0
    out = []
    for row in grid:
        slid, reward = merge_row_left(row)
        out.append(slid)
        total += reward

    if direction == 1:
        out = [list(col) for col in zip(*out)]
    elif direction == 2:
        out = [r[::-1] for r in out]
    elif direction == 3:
        out = [list(col) for col in zip(*[r[::-1] for r in out])]
    return out, total


# --- kuhn poker --------------------------------------------------------------

def kuhn_payoff(hands, sequence):
    """Payoff for player A given a terminal action-name sequence.

    Encodes the five scenarios directly: bet-call and check-bet-call show
    down for 2, check-check for 1, folds hand the antes to the bettor.
    """
    showdown = 1 if hands[0] > hands[1] else -1
    table = {
        ("bet", "call"): 2 * showdown,
        ("bet", "fold"): 1,
        ("check", "check"): showdown,
        ("check", "bet", "call"): 2 * showdown,
        ("check", "bet", "fold"): -1,
    }
    return table[tuple(sequence)]


def kuhn_sequences():
    return (
        ("bet", "call"),
        ("bet", "fold"),
        ("check", "check"),
        ("check", "bet", "call"),
        ("check", "bet", "fold"),
    )
