"""Optional upload of report files to Google Cloud Storage."""
from __future__ import annotations

import logging
import mimetypes
import os
from typing import List, Sequence

from google.cloud import storage

from .. import settings

logger = logging.getLogger(__name__)

# ----------------------------------------------------------------------
# INITIALIZATION
# ----------------------------------------------------------------------

# Lazy-init Google Cloud Storage client
_storage_client: storage.Client | None = None


def get_storage_client() -> storage.Client:
    global _storage_client
    if _storage_client is None:
        _storage_client = storage.Client()
    return _storage_client


def _require_bucket() -> str:
    if not settings.REPORT_BUCKET:
        raise RuntimeError("QSEARCH_BUCKET env var not set")
    return settings.REPORT_BUCKET


# ----------------------------------------------------------------------
# UPLOAD
# ----------------------------------------------------------------------

def upload_report(local_path: str, prefix: str | None = None) -> str:
    bucket_name = _require_bucket()
    bucket = get_storage_client().bucket(bucket_name)
    prefix = settings.REPORT_PREFIX if prefix is None else prefix
    blob_path = f"{prefix.rstrip('/')}/{os.path.basename(local_path)}"
    blob = bucket.blob(blob_path)
    content_type = mimetypes.guess_type(local_path)[0] or "application/octet-stream"
    with open(local_path, "rb") as fh:
        blob.upload_from_file(fh, content_type=content_type)
    logger.info("uploaded %s to gs://%s/%s", local_path, bucket_name, blob_path)
    return f"gs://{bucket_name}/{blob_path}"


def upload_reports(paths: Sequence[str], prefix: str | None = None) -> List[str]:
    return [upload_report(p, prefix) for p in paths]
