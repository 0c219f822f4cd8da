/* Search kernels for the rewriting engine.
 *
 * Words are byte strings of letter codes.  Rules are (src, dst) pairs; a rule
 * with empty src is an insertion, tried at every position.  Neighbor order
 * matches the Python implementation: non-empty rules by rule index then
 * position, then insertions by rule index then position.
 */
#define PY_SSIZE_T_CLEAN
#include <Python.h>
#include <stdint.h>
#include <stdlib.h>
#include <string.h>

#define MAXW 255

typedef struct {
    uint32_t off;   /* offset into arena */
    uint8_t len;
    uint8_t side;
    int32_t parent; /* -1 for roots */
    int32_t rule;
    int32_t pos;
    int32_t depth;
} State;

typedef struct {
    State *st;
    size_t n, cap;
    uint8_t *arena;
    size_t alen, acap;
    int32_t *table; /* open addressing, -1 empty */
    size_t tcap;
} Store;

typedef struct {
    Py_ssize_t n;
    const uint8_t **src;
    Py_ssize_t *slen;
    const uint8_t **dst;
    Py_ssize_t *dlen;
} Rules;

static uint64_t hash_bytes(const uint8_t *w, size_t n) {
    uint64_t h = 1469598103934665603ULL ^ n;
    for (size_t i = 0; i < n; i++) {
        h ^= w[i];
        h *= 1099511628211ULL;
    }
    return h ^ (h >> 29);
}

static int store_init(Store *s) {
    s->cap = 1024;
    s->n = 0;
    s->st = malloc(s->cap * sizeof(State));
    s->acap = 1 << 16;
    s->alen = 0;
    s->arena = malloc(s->acap);
    s->tcap = 4096;
    s->table = malloc(s->tcap * sizeof(int32_t));
    if (!s->st || !s->arena || !s->table) return -1;
    memset(s->table, 0xff, s->tcap * sizeof(int32_t));
    return 0;
}

static void store_free(Store *s) {
    free(s->st);
    free(s->arena);
    free(s->table);
}

static inline const uint8_t *word_of(const Store *s, int32_t i) { return s->arena + s->st[i].off; }

/* index of w in the table, or -1 */
static int32_t store_find(const Store *s, const uint8_t *w, size_t n) {
    size_t mask = s->tcap - 1;
    size_t h = hash_bytes(w, n) & mask;
    for (;;) {
        int32_t i = s->table[h];
        if (i < 0) return -1;
        if (s->st[i].len == n && memcmp(word_of(s, i), w, n) == 0) return i;
        h = (h + 1) & mask;
    }
}

static int store_grow_table(Store *s) {
    size_t ncap = s->tcap * 2;
    int32_t *nt = malloc(ncap * sizeof(int32_t));
    if (!nt) return -1;
    memset(nt, 0xff, ncap * sizeof(int32_t));
    for (size_t i = 0; i < s->n; i++) {
        size_t h = hash_bytes(word_of(s, (int32_t)i), s->st[i].len) & (ncap - 1);
        while (nt[h] >= 0) h = (h + 1) & (ncap - 1);
        nt[h] = (int32_t)i;
    }
    free(s->table);
    s->table = nt;
    s->tcap = ncap;
    return 0;
}

static int32_t store_add(Store *s, const uint8_t *w, size_t n, uint8_t side, int32_t parent,
                         int32_t rule, int32_t pos, int32_t depth) {
    if ((s->n + 1) * 2 > s->tcap && store_grow_table(s) < 0) return -2;
    if (s->n == s->cap) {
        size_t nc = s->cap * 2;
        State *ns = realloc(s->st, nc * sizeof(State));
        if (!ns) return -2;
        s->st = ns;
        s->cap = nc;
    }
    if (s->alen + n > s->acap) {
        size_t nc = s->acap * 2;
        while (s->alen + n > nc) nc *= 2;
        uint8_t *na = realloc(s->arena, nc);
        if (!na) return -2;
        s->arena = na;
        s->acap = nc;
    }
    memcpy(s->arena + s->alen, w, n);
    int32_t i = (int32_t)s->n;
    State *st = &s->st[i];
    st->off = (uint32_t)s->alen;
    st->len = (uint8_t)n;
    st->side = side;
    st->parent = parent;
    st->rule = rule;
    st->pos = pos;
    st->depth = depth;
    s->alen += n;
    s->n++;
    size_t mask = s->tcap - 1;
    size_t h = hash_bytes(w, n) & mask;
    while (s->table[h] >= 0) h = (h + 1) & mask;
    s->table[h] = i;
    return i;
}

static int parse_rules(PyObject *seq, Rules *r) {
    PyObject *fast = PySequence_Fast(seq, "rules must be a sequence");
    if (!fast) return -1;
    r->n = PySequence_Fast_GET_SIZE(fast);
    r->src = calloc(r->n + 1, sizeof(uint8_t *));
    r->dst = calloc(r->n + 1, sizeof(uint8_t *));
    r->slen = calloc(r->n + 1, sizeof(Py_ssize_t));
    r->dlen = calloc(r->n + 1, sizeof(Py_ssize_t));
    for (Py_ssize_t i = 0; i < r->n; i++) {
        PyObject *pair = PySequence_Fast_GET_ITEM(fast, i);
        PyObject *a, *b;
        if (!PyArg_ParseTuple(pair, "SS", &a, &b)) {
            Py_DECREF(fast);
            return -1;
        }
        r->src[i] = (const uint8_t *)PyBytes_AS_STRING(a);
        r->slen[i] = PyBytes_GET_SIZE(a);
        r->dst[i] = (const uint8_t *)PyBytes_AS_STRING(b);
        r->dlen[i] = PyBytes_GET_SIZE(b);
    }
    /* the pair objects are owned by the caller's list, which outlives us */
    Py_DECREF(fast);
    return 0;
}

static void free_rules(Rules *r) {
    free(r->src);
    free(r->dst);
    free(r->slen);
    free(r->dlen);
}

/* Callback-free neighbor enumeration: fills out[] with (rule, pos) in order. */
typedef struct {
    int32_t rule, pos;
} Move;

static size_t moves_of(const Rules *r, const uint8_t *w, size_t n, Move *out, size_t cap) {
    size_t k = 0;
    for (Py_ssize_t i = 0; i < r->n; i++) {
        Py_ssize_t m = r->slen[i];
        if (m == 0 || (size_t)m > n) continue;
        for (size_t p = 0; p + m <= n; p++) {
            if (w[p] == r->src[i][0] && memcmp(w + p, r->src[i], m) == 0) {
                if (k < cap) out[k].rule = (int32_t)i, out[k].pos = (int32_t)p;
                k++;
            }
        }
    }
    for (Py_ssize_t i = 0; i < r->n; i++) {
        if (r->slen[i] != 0) continue;
        for (size_t p = 0; p <= n; p++) {
            if (k < cap) out[k].rule = (int32_t)i, out[k].pos = (int32_t)p;
            k++;
        }
    }
    return k;
}

static size_t build(const Rules *r, const uint8_t *w, size_t n, Move mv, uint8_t *buf) {
    Py_ssize_t m = r->slen[mv.rule], d = r->dlen[mv.rule];
    memcpy(buf, w, mv.pos);
    memcpy(buf + mv.pos, r->dst[mv.rule], d);
    memcpy(buf + mv.pos + d, w + mv.pos + m, n - mv.pos - m);
    return n - m + d;
}

static int cmp_words(const Store *s, int32_t a, int32_t b) {
    const State *x = &s->st[a], *y = &s->st[b];
    if (x->len != y->len) return x->len < y->len ? -1 : 1;
    return memcmp(word_of(s, a), word_of(s, b), x->len);
}

static const Store *g_sort_store;
static int qcmp(const void *a, const void *b) {
    return cmp_words(g_sort_store, *(const int32_t *)a, *(const int32_t *)b);
}

static PyObject *path_to(const Store *s, int32_t i) {
    /* list of (rule, pos) from the root to state i */
    Py_ssize_t len = 0;
    for (int32_t j = i; s->st[j].parent >= 0; j = s->st[j].parent) len++;
    PyObject *out = PyList_New(len);
    if (!out) return NULL;
    Py_ssize_t k = len - 1;
    for (int32_t j = i; s->st[j].parent >= 0; j = s->st[j].parent, k--) {
        PyObject *t = Py_BuildValue("(ii)", s->st[j].rule, s->st[j].pos);
        if (!t) {
            Py_DECREF(out);
            return NULL;
        }
        PyList_SET_ITEM(out, k, t);
    }
    return out;
}

typedef struct {
    int32_t *v;
    size_t n, cap;
} IVec;

static int ivec_push(IVec *v, int32_t x) {
    if (v->n == v->cap) {
        size_t nc = v->cap ? v->cap * 2 : 256;
        int32_t *nv = realloc(v->v, nc * sizeof(int32_t));
        if (!nv) return -1;
        v->v = nv;
        v->cap = nc;
    }
    v->v[v->n++] = x;
    return 0;
}

/* frontier key: (size, least word) */
static int frontier_less_eq(const Store *s, const IVec *a, const IVec *b) {
    if (a->n != b->n) return a->n < b->n;
    if (a->n == 0) return 1;
    /* frontiers are kept sorted, so element 0 is the least word */
    return cmp_words(s, a->v[0], b->v[0]) <= 0;
}

static PyObject *k_bfs(PyObject *self, PyObject *args) {
    Py_buffer w1, w2;
    PyObject *rules_obj;
    Py_ssize_t max_len, max_states, max_depth;
    if (!PyArg_ParseTuple(args, "y*y*Onnn", &w1, &w2, &rules_obj, &max_len, &max_states, &max_depth))
        return NULL;
    Rules r;
    Store s;
    IVec front[2] = {{0}, {0}}, next = {0};
    Move *moves = NULL;
    size_t mcap = 4096;
    PyObject *result = NULL;
    int status = 2;
    int32_t meet_a = -1, meet_b = -1; /* meet_a on side 0 tree, meet_b on side 1 tree */
    int32_t best_total = INT32_MAX;
    if (max_len > MAXW) max_len = MAXW;
    if (parse_rules(rules_obj, &r) < 0) goto done_early;
    if (store_init(&s) < 0) {
        PyErr_NoMemory();
        free_rules(&r);
        goto done_early;
    }
    moves = malloc(mcap * sizeof(Move));
    uint8_t buf[2 * MAXW + 64];
    int32_t root0 = store_add(&s, w1.buf, w1.len, 0, -1, -1, -1, 0);
    int32_t root1 = store_add(&s, w2.buf, w2.len, 1, -1, -1, -1, 0);
    ivec_push(&front[0], root0);
    ivec_push(&front[1], root1);
    int depth[2] = {0, 0};

    Py_BEGIN_ALLOW_THREADS
    while (front[0].n && front[1].n) {
        if (depth[0] + depth[1] >= max_depth) {
            status = 2;
            break;
        }
        int k = frontier_less_eq(&s, &front[0], &front[1]) ? 0 : 1;
        next.n = 0;
        int over = 0;
        for (size_t fi = 0; fi < front[k].n && !over; fi++) {
            int32_t cur = front[k].v[fi];
            size_t n = s.st[cur].len;
            size_t nm = moves_of(&r, word_of(&s, cur), n, moves, mcap);
            if (nm > mcap) {
                while (mcap < nm) mcap *= 2;
                moves = realloc(moves, mcap * sizeof(Move));
                moves_of(&r, word_of(&s, cur), n, moves, mcap);
            }
            for (size_t mi = 0; mi < nm; mi++) {
                size_t nn = n - r.slen[moves[mi].rule] + r.dlen[moves[mi].rule];
                if (nn > (size_t)max_len) continue;
                build(&r, word_of(&s, cur), n, moves[mi], buf);
                int32_t j = store_find(&s, buf, nn);
                if (j >= 0) {
                    if (s.st[j].side != k) {
                        /* meet: path lengths on both sides */
                        int32_t total = s.st[j].depth + s.st[cur].depth + 1;
                        int better = 0;
                        if (total < best_total) better = 1;
                        else if (total == best_total) {
                            int32_t cur_meet = (k == 0) ? meet_b : meet_a;
                            if (nn < s.st[cur_meet].len ||
                                (nn == s.st[cur_meet].len && memcmp(buf, word_of(&s, cur_meet), nn) < 0))
                                better = 1;
                        }
                        if (better) {
                            /* register the meeting word on side k as a new state */
                            int32_t t = store_add(&s, buf, nn, (uint8_t)k, cur, moves[mi].rule,
                                                  moves[mi].pos, s.st[cur].depth + 1);
                            if (t == -2) { over = 1; status = 3; break; }
                            /* the lookup table now has two entries; keep the original first */
                            if (k == 0) { meet_a = t; meet_b = j; }
                            else { meet_a = j; meet_b = t; }
                            best_total = total;
                        }
                    }
                    continue;
                }
                j = store_add(&s, buf, nn, (uint8_t)k, cur, moves[mi].rule, moves[mi].pos,
                              s.st[cur].depth + 1);
                if (j == -2) { over = 1; status = 3; break; }
                ivec_push(&next, j);
            }
            if ((Py_ssize_t)s.n > max_states) {
                over = 1;
                status = 1;
            }
        }
        if (over) break;
        g_sort_store = &s;
        qsort(next.v, next.n, sizeof(int32_t), qcmp);
        IVec tmp = front[k];
        front[k] = next;
        next = tmp;
        depth[k]++;
        if (meet_a >= 0) {
            status = 0;
            break;
        }
    }
    if (!front[0].n || !front[1].n) {
        if (status != 1 && status != 3 && meet_a < 0) status = 2;
    }
    Py_END_ALLOW_THREADS

    if (status == 3) {
        PyErr_NoMemory();
    } else if (status == 0) {
        PyObject *p1 = path_to(&s, meet_a);
        PyObject *p2 = path_to(&s, meet_b);
        if (p1 && p2) result = Py_BuildValue("(inNN)", 0, (Py_ssize_t)s.n, p1, p2);
        else {
            Py_XDECREF(p1);
            Py_XDECREF(p2);
        }
    } else {
        result = Py_BuildValue("(inOO)", status, (Py_ssize_t)s.n, Py_None, Py_None);
    }
    free(front[0].v);
    free(front[1].v);
    free(next.v);
    free(moves);
    store_free(&s);
    free_rules(&r);
done_early:
    PyBuffer_Release(&w1);
    PyBuffer_Release(&w2);
    return result;
}

/* binary heap over state indices ordered by (len, bytes) */
typedef struct {
    int32_t *v;
    size_t n, cap;
    const Store *s;
} Heap;

static int heap_push(Heap *h, int32_t x) {
    if (h->n == h->cap) {
        size_t nc = h->cap ? h->cap * 2 : 1024;
        int32_t *nv = realloc(h->v, nc * sizeof(int32_t));
        if (!nv) return -1;
        h->v = nv;
        h->cap = nc;
    }
    size_t i = h->n++;
    h->v[i] = x;
    while (i > 0) {
        size_t p = (i - 1) / 2;
        if (cmp_words(h->s, h->v[i], h->v[p]) >= 0) break;
        int32_t t = h->v[i];
        h->v[i] = h->v[p];
        h->v[p] = t;
        i = p;
    }
    return 0;
}

static int32_t heap_pop(Heap *h) {
    int32_t top = h->v[0];
    h->v[0] = h->v[--h->n];
    size_t i = 0;
    for (;;) {
        size_t l = 2 * i + 1, r = l + 1, m = i;
        if (l < h->n && cmp_words(h->s, h->v[l], h->v[m]) < 0) m = l;
        if (r < h->n && cmp_words(h->s, h->v[r], h->v[m]) < 0) m = r;
        if (m == i) break;
        int32_t t = h->v[i];
        h->v[i] = h->v[m];
        h->v[m] = t;
        i = m;
    }
    return top;
}

static PyObject *k_best_first(PyObject *self, PyObject *args) {
    Py_buffer w;
    PyObject *rules_obj;
    Py_ssize_t max_len, max_states;
    Py_buffer target;
    if (!PyArg_ParseTuple(args, "y*Onny*", &w, &rules_obj, &max_len, &max_states, &target)) return NULL;
    Rules r;
    Store s;
    Heap h = {0};
    PyObject *result = NULL;
    if (max_len > MAXW) max_len = MAXW;
    if (parse_rules(rules_obj, &r) < 0) goto done_early;
    if (store_init(&s) < 0) {
        PyErr_NoMemory();
        free_rules(&r);
        goto done_early;
    }
    h.s = &s;
    size_t mcap = 4096;
    Move *moves = malloc(mcap * sizeof(Move));
    uint8_t buf[2 * MAXW + 64];
    int32_t root = store_add(&s, w.buf, w.len, 0, -1, -1, -1, 0);
    heap_push(&h, root);
    int32_t best = root;
    Py_ssize_t popped = 0;
    int oom = 0;
    Py_BEGIN_ALLOW_THREADS
    while (h.n && popped < max_states) {
        int32_t cur = heap_pop(&h);
        popped++;
        if (cmp_words(&s, cur, best) < 0) best = cur;
        if (s.st[best].len == 0) break;
        if ((Py_ssize_t)s.st[cur].len == target.len &&
            memcmp(word_of(&s, cur), target.buf, target.len) == 0) {
            best = cur;
            break;
        }
        size_t n = s.st[cur].len;
        size_t nm = moves_of(&r, word_of(&s, cur), n, moves, mcap);
        if (nm > mcap) {
            while (mcap < nm) mcap *= 2;
            moves = realloc(moves, mcap * sizeof(Move));
            moves_of(&r, word_of(&s, cur), n, moves, mcap);
        }
        for (size_t mi = 0; mi < nm; mi++) {
            size_t nn = n - r.slen[moves[mi].rule] + r.dlen[moves[mi].rule];
            if (nn > (size_t)max_len) continue;
            build(&r, word_of(&s, cur), n, moves[mi], buf);
            if (store_find(&s, buf, nn) >= 0) continue;
            int32_t j = store_add(&s, buf, nn, 0, cur, moves[mi].rule, moves[mi].pos, s.st[cur].depth + 1);
            if (j == -2 || heap_push(&h, j) < 0) {
                oom = 1;
                break;
            }
        }
        if (oom || (Py_ssize_t)s.n > max_states) break;
    }
    Py_END_ALLOW_THREADS
    if (oom) {
        PyErr_NoMemory();
    } else {
        PyObject *path = path_to(&s, best);
        PyObject *word = PyBytes_FromStringAndSize((const char *)word_of(&s, best), s.st[best].len);
        if (path && word) result = Py_BuildValue("(NNn)", word, path, (Py_ssize_t)s.n);
        else {
            Py_XDECREF(path);
            Py_XDECREF(word);
        }
    }
    free(h.v);
    free(moves);
    store_free(&s);
    free_rules(&r);
done_early:
    PyBuffer_Release(&w);
    PyBuffer_Release(&target);
    return result;
}

static PyMethodDef methods[] = {
    {"bfs", k_bfs, METH_VARARGS,
     "bfs(w1, w2, rules, max_len, max_states, max_depth) -> (status, states, path1, path2)"},
    {"best_first", k_best_first, METH_VARARGS,
     "best_first(w, rules, max_len, max_states, target) -> (best, path, states)"},
    {NULL, NULL, 0, NULL}};

static struct PyModuleDef module = {PyModuleDef_HEAD_INIT, "_kernel", NULL, -1, methods};

PyMODINIT_FUNC PyInit__kernel(void) { return PyModule_Create(&module); }
