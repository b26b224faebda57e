// Wire types mirroring the service's JSON shapes.
export {};
