from .app import create_app
from .state import BundleConfig, SnapshotBundle, build_bundle, load_bundle

__all__ = ["create_app", "BundleConfig", "SnapshotBundle", "build_bundle", "load_bundle"]
