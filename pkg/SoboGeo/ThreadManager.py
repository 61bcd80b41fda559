# Worker pool for independent evaluations (finite-difference columns,
# suite tasks).
#

from SoboGeo.Utility import threadCount
from concurrent.futures import ThreadPoolExecutor


def parallelMap(function, items, max_workers=None):
    """
    Apply function to every item, using at most max_workers threads
    (default: SOBOGEO_THREADS or the number of processors). The results
    are returned in the order of the items; the first exception raised
    by any call is re-raised.
    """
    items = list(items)
    if max_workers is None:
        max_workers = threadCount()
    if max_workers <= 1 or len(items) <= 1:
        return [function(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(max_workers, len(items)),
                            thread_name_prefix='SoboGeo') as pool:
        return list(pool.map(function, items))
