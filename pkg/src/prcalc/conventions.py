"""Sign conventions, fixed once for the whole engine (see CONVENTIONS.md).

* ``{v, f} = v(f)``, ``{f, v} = -v(f)``, ``{f, g} = 0``.
* ``p_i`` is the image of the frame field ``d_i``; hence ``{p_i, x_j} = delta_ij``
  and ``[p_i, x_j] = z delta_ij``.
* Quantum substitution ``z -> orientation * i * hbar``.  The default
  orientation -1 gives ``pi(p) = +hbar (n + alpha)`` on ``exp(i n theta)``
  (i.e. ``p = -i hbar d/dtheta``) and ``[x, p] = -z = i hbar``.
"""

DEFAULT_ORIENTATION = -1
